#include <iostream>
#include <string>
#include <vector>

#include "rieszmod/cli/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return rieszmod::cli::run(args, std::cout);
}
