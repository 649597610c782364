#pragma once

#include <functional>
#include <vector>

#include "rieszmod/linalg.hpp"

namespace rieszmod::module {

/// ||x||_p for p in [1, inf].
double lp_vector_norm(const Vector& x, double p);

/// The dual vector y with ||y||_q = 1 and <y, x> = ||x||_p (zero for x = 0).
Vector lp_norming_vector(const Vector& x, double p);

struct AffineMin {
  double value = 0.0;  // -inf when unbounded below
  Vector t;            // a minimizer (or the best point found)
  bool bounded = true;
};

/// Minimizes g ||a + M t||_p - ell . t over t, where M has full column rank
/// and g >= 0. p = 1 and p = inf are solved exactly by vertex enumeration,
/// p = 2 in closed form, other p by coordinate descent with golden-section
/// line searches (stops when a sweep gains under 1e-14 relative, at most 1e4
/// sweeps).
AffineMin min_affine_norm(const Vector& a, const Matrix& m, double p, double g = 1.0,
                          const Vector& ell = Vector());

/// Calls visit(indices) for every k-subset of {0, ..., n-1}, in
/// lexicographic order.
void for_each_subset(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& visit);

/// A superset of the extreme points of { t : ||M t||_p <= 1 } for p in
/// {1, inf} and M of full column rank.
std::vector<Vector> lp_preimage_ball_vertices(const Matrix& m, double p);

/// sup { ell . t : ||M t||_p <= 1 } for M of full column rank, which equals
/// min { ||y||_q : M^T y = ell }, together with a maximizing t. Exact for
/// p = 1 and p = inf (vertex enumeration) and p = 2.
struct Support {
  double value = 0.0;
  Vector t;
};
Support lp_preimage_support(const Matrix& m, double p, const Vector& ell);

/// Exact minimum of a convex function of one variable on a bracket found by
/// expansion from 0 with initial step h.
struct LineMin {
  double s;
  double value;
  bool bounded = true;
};
template <class F>
LineMin golden_line_search(const F& phi, double h);

}  // namespace rieszmod::module

#include "rieszmod/module/convex_min_impl.hpp"
