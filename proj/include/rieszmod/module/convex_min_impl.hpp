#pragma once

#include <cmath>
#include <limits>

namespace rieszmod::module {

template <class F>
LineMin golden_line_search(const F& phi, double h) {
  constexpr int kMaxExpansions = 200;
  constexpr double kInvPhi = 0.6180339887498949;
  const double f0 = phi(0.0);
  double lo, hi;
  if (phi(h) < f0) {
    double prev = 0.0, cur = h, fcur = phi(h);
    int k = 0;
    for (;; ++k) {
      const double next = 2.0 * cur, fnext = phi(next);
      if (!(fnext < fcur)) {
        lo = prev;
        hi = next;
        break;
      }
      if (k == kMaxExpansions) return {next, -std::numeric_limits<double>::infinity(), false};
      prev = cur;
      cur = next;
      fcur = fnext;
    }
  } else if (phi(-h) < f0) {
    double prev = 0.0, cur = -h, fcur = phi(-h);
    int k = 0;
    for (;; ++k) {
      const double next = 2.0 * cur, fnext = phi(next);
      if (!(fnext < fcur)) {
        lo = next;
        hi = prev;
        break;
      }
      if (k == kMaxExpansions) return {next, -std::numeric_limits<double>::infinity(), false};
      prev = cur;
      cur = next;
      fcur = fnext;
    }
  } else {
    lo = -h;
    hi = h;
  }
  double x1 = hi - kInvPhi * (hi - lo), x2 = lo + kInvPhi * (hi - lo);
  double f1 = phi(x1), f2 = phi(x2);
  for (int it = 0; it < 200 && (hi - lo) > 1e-15 * (1.0 + std::abs(lo) + std::abs(hi)); ++it) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - kInvPhi * (hi - lo);
      f1 = phi(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + kInvPhi * (hi - lo);
      f2 = phi(x2);
    }
  }
  // Never return something worse than staying put.
  double best_s = 0.0, best_f = f0;
  if (f1 < best_f) best_s = x1, best_f = f1;
  if (f2 < best_f) best_s = x2, best_f = f2;
  return {best_s, best_f, true};
}

}  // namespace rieszmod::module
