#pragma once

#include <limits>
#include <string>

#include <json.hpp>

#include "rieszmod/finite/fn.hpp"
#include "rieszmod/finite/measure_space.hpp"

namespace rieszmod::finite {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// (sum_i |f_i|^p mu_i)^(1/p) for p < inf, max_i |f_i| for p = inf.
/// Throws InvalidExponent unless p >= 1.
double lp_norm(const Fn& f, double p, const FiniteMeasureSpace& space);

/// sum_i min(|f_i - g_i|, 1) * aux_i.
double l0_distance(const Fn& f, const Fn& g, const FiniteMeasureSpace& space);

/// 1/p + 1/q = 1, with 1 <-> inf.
double conjugate_exponent(double p);

enum class SpaceKind { Lp, Linf, L0 };

/// Which of the concrete function spaces a slot of a structure is, with its
/// distance.
class SpaceType {
 public:
  static SpaceType lp(double p);  // p = inf gives Linf
  static SpaceType linf() { return SpaceType(SpaceKind::Linf, kInf); }
  static SpaceType l0() { return SpaceType(SpaceKind::L0, 0.0); }

  SpaceKind kind() const { return kind_; }
  /// p for Lp, inf for Linf; meaningless for L0.
  double exponent() const { return p_; }
  bool is_normed() const { return kind_ != SpaceKind::L0; }

  double distance(const Fn& f, const Fn& g, const FiniteMeasureSpace& space) const;
  double distance_from_zero(const Fn& f, const FiniteMeasureSpace& space) const;

  /// Largest possible |f_i - g_i| at each atom given that the distance of f
  /// and g is d; inf where the distance gives no control.
  Fn pointwise_radius(double d, const FiniteMeasureSpace& space) const;

  std::string label() const;
  friend bool operator==(const SpaceType&, const SpaceType&) = default;

 private:
  SpaceType(SpaceKind kind, double p) : kind_(kind), p_(p) {}
  SpaceKind kind_;
  double p_;
};

/// "Linf", "L0" or {"Lp": p}.
nlohmann::json to_json(const SpaceType& t);
SpaceType space_type_from_json(const nlohmann::json& j);

}  // namespace rieszmod::finite
