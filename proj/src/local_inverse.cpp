#include "rieszmod/finite/local_inverse.hpp"

#include <algorithm>
#include <cmath>

#include "rieszmod/error.hpp"

namespace rieszmod::finite {

namespace {

constexpr double kTwo53 = 9007199254740992.0;

Fn reciprocal_on(const Fn& u, const Fn& block) {
  Fn w = Fn::zeros(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (block[i] != 0.0) w[i] = 1.0 / u[i];
  }
  return w;
}

LocalInverse faithful(const Fn& u) {
  const std::size_t n_atoms = u.size();
  const Fn support = positive_indicator(u);

  // s_1, s_2, ... until the approximation is exact; s_j is constant after.
  std::vector<Fn> approx;
  for (int j = 1;; ++j) {
    approx.push_back(dyadic_approximation(u, j));
    if (approx.back() == u) break;
  }

  // u_1 = b_1, u_{n+1} = b_{n+1} (1 - b_n), b_n = {s_n > 0}.
  std::vector<Idem> parts;
  std::vector<Fn> inverses;
  Fn prev = Fn::zeros(n_atoms);
  for (std::size_t n = 0; n < approx.size(); ++n) {
    const Fn b = positive_indicator(approx[n]);
    const Fn block = b * (one_like(b) - prev);
    prev = b;
    if (block == zero_like(block)) continue;
    // w_n = inf_{j >= n} u_n t_j with t_j the reciprocal of s_j on its support.
    Fn w = reciprocal_on(approx[n], block);
    for (std::size_t j = n + 1; j < approx.size(); ++j) w = meet(w, reciprocal_on(approx[j], block));
    parts.emplace_back(block);
    inverses.push_back(std::move(w));
  }
  return {Partition(std::move(parts), Idem(support)), std::move(inverses)};
}

}  // namespace

Fn dyadic_approximation(const Fn& u, int n) {
  const double cap = std::ldexp(1.0, n);
  Fn s = Fn::zeros(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    // Once u * 2^n >= 2^53 the value is already a multiple of 2^-n.
    const double scaled = u[i] >= std::ldexp(kTwo53, -n) ? u[i] : std::ldexp(std::floor(std::ldexp(u[i], n)), -n);
    s[i] = std::min(cap, scaled);
  }
  return s;
}

LocalInverse local_inverse(const Fn& u, LocalInverseMode mode) {
  if (!is_nonnegative(u)) throw Error(ErrorCode::NegativeInput, "local inverse needs u >= 0");
  const Fn support = positive_indicator(u);
  if (mode == LocalInverseMode::Faithful) return faithful(u);
  if (support == zero_like(support)) return {Partition({}, Idem(support)), {}};
  return {Partition({Idem(support)}, Idem(support)), {reciprocal_on(u, support)}};
}

}  // namespace rieszmod::finite
