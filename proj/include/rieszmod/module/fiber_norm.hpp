#pragma once

#include <cstddef>
#include <optional>

#include <json.hpp>

#include "rieszmod/linalg.hpp"
#include "rieszmod/module/convex_min.hpp"

namespace rieszmod::module {

/// N(x) = ||C x||_p.
struct LpForm {
  Matrix c;
  double p;
};

/// The norm of one fiber. Three shapes cover everything the constructions
/// produce:
/// \arg plain: l^p on R^d, or sqrt(x^T G x) for a positive definite G
/// \arg mapped: x -> base(A x) with A of full column rank
/// \arg polar: xi -> min { ||eta||_q : A^T eta = xi }, the dual of a mapped
///      l^p norm whose map is not square; only dual() creates these.
class FiberNorm {
 public:
  enum class Base { Lp, Gram };

  static FiberNorm lp(std::size_t dim, double p);
  static FiberNorm gram(const Matrix& g);
  static FiberNorm mapped(const FiberNorm& base, const Matrix& a);

  std::size_t dim() const;
  Base base() const { return base_; }
  /// Exponent of the l^p base (2 for Gram bases).
  double p() const { return p_; }
  const Matrix& gram_matrix() const { return gram_; }
  const std::optional<Matrix>& map() const { return map_; }
  bool is_polar() const { return polar_; }

  double operator()(const Vector& x) const;

  /// Dual norm on the same coordinates (functionals act by dot product).
  FiberNorm dual() const;

  /// H with N(x)^2 = x^T H x, when the norm is Euclidean.
  std::optional<Matrix> euclidean_gram() const;

  /// ||C x||_p form of a non-polar norm.
  LpForm form() const;

  /// Minimizes g N(x0 + s t) - ell . t over t; s needs full column rank.
  AffineMin min_affine(const Vector& x0, const Matrix& s, double g = 1.0, const Vector& ell = Vector()) const;

  /// omega with omega . x = N(x) and dual norm of omega equal to 1 (0 for x = 0).
  Vector norming(const Vector& x) const;

  friend bool operator==(const FiberNorm& a, const FiberNorm& b);

 private:
  FiberNorm() = default;

  Base base_ = Base::Lp;
  double p_ = 2.0;
  Matrix gram_;
  Matrix gram_factor_;  // upper factor R with G = R^T R
  std::optional<Matrix> map_;
  bool polar_ = false;
  std::size_t plain_dim_ = 0;
};

nlohmann::json to_json(const FiberNorm& n);
/// {"lp": p} or {"gram": G}, optionally with "map" and "polar"; p may be
/// "inf".
FiberNorm fiber_norm_from_json(std::size_t dim, const nlohmann::json& j);

}  // namespace rieszmod::module
