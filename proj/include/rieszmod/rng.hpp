#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace rieszmod {

/// Seeded generator with portable derived distributions: the standard
/// distribution adaptors are implementation-defined, this one is not, so a
/// seed determines every sample bit-for-bit on any platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  double uniform();                       // [0, 1)
  double uniform(double lo, double hi);   // [lo, hi)
  std::size_t index(std::size_t n);       // [0, n)
  double normal();
  bool coin(double p_true = 0.5) { return uniform() < p_true; }
  std::vector<double> uniform_vector(std::size_t n, double lo, double hi);

  /// Independent child stream; used to give each sample its own generator.
  Rng split() { return Rng(next() ^ 0x9e3779b97f4a7c15ULL); }

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace rieszmod
