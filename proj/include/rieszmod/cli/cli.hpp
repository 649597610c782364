#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace rieszmod::cli {

inline constexpr const char* kReportVersion = "1.0.0";

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kInputError = 2 };

/// Runs one command (args exclude the program name) and writes a JSON
/// report, or an { "error": { code, message, path } } object, to out.
int run(const std::vector<std::string>& args, std::ostream& out);

}  // namespace rieszmod::cli
