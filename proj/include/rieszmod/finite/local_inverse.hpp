#pragma once

#include <vector>

#include "rieszmod/finite/structure.hpp"

namespace rieszmod::finite {

/// A partition (u_n) of {u > 0} and w_n >= 0 with u_n (u w_n - 1) = 0.
struct LocalInverse {
  Partition partition;
  std::vector<Fn> inverses;
};

enum class LocalInverseMode {
  Direct,    // one block, pointwise reciprocal on the support
  Faithful,  // level-set blocks from dyadic simple approximations of u
};

/// Throws NegativeInput if u has a negative value.
LocalInverse local_inverse(const Fn& u, LocalInverseMode mode = LocalInverseMode::Direct);

/// The n-th dyadic simple approximation min(2^n, floor(2^n u) / 2^n);
/// non-decreasing in n and equal to u from some finite n on.
Fn dyadic_approximation(const Fn& u, int n);

}  // namespace rieszmod::finite
