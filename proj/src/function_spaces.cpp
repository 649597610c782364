#include "rieszmod/finite/function_spaces.hpp"

#include <algorithm>
#include <cmath>

#include "rieszmod/error.hpp"

namespace rieszmod::finite {

double lp_norm(const Fn& f, double p, const FiniteMeasureSpace& space) {
  space.check(f);
  if (!(p >= 1.0)) throw Error(ErrorCode::InvalidExponent, "exponent must be at least 1");
  if (std::isinf(p)) return sup_norm(f);
  if (p == 1.0) {
    double s = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) s += std::abs(f[i]) * space.weight(i);
    return s;
  }
  // Scale by the largest entry to avoid overflow in |f|^p.
  const double m = sup_norm(f);
  if (m == 0.0) return 0.0;
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) s += std::pow(std::abs(f[i]) / m, p) * space.weight(i);
  return m * std::pow(s, 1.0 / p);
}

double l0_distance(const Fn& f, const Fn& g, const FiniteMeasureSpace& space) {
  space.check(f);
  space.check(g);
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) s += std::min(std::abs(f[i] - g[i]), 1.0) * space.aux_weight(i);
  return s;
}

double conjugate_exponent(double p) {
  if (!(p >= 1.0)) throw Error(ErrorCode::InvalidExponent, "exponent must be at least 1");
  if (p == 1.0) return kInf;
  if (std::isinf(p)) return 1.0;
  return p / (p - 1.0);
}

SpaceType SpaceType::lp(double p) {
  if (!(p >= 1.0)) throw Error(ErrorCode::InvalidExponent, "Lp needs p >= 1");
  if (std::isinf(p)) return linf();
  return SpaceType(SpaceKind::Lp, p);
}

double SpaceType::distance(const Fn& f, const Fn& g, const FiniteMeasureSpace& space) const {
  switch (kind_) {
    case SpaceKind::Lp: return lp_norm(f - g, p_, space);
    case SpaceKind::Linf: space.check(f); return sup_norm(f - g);
    case SpaceKind::L0: return l0_distance(f, g, space);
  }
  return 0.0;
}

double SpaceType::distance_from_zero(const Fn& f, const FiniteMeasureSpace& space) const {
  return distance(f, zero_like(f), space);
}

Fn SpaceType::pointwise_radius(double d, const FiniteMeasureSpace& space) const {
  std::vector<double> r(space.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    switch (kind_) {
      case SpaceKind::Lp: r[i] = d / std::pow(space.weight(i), 1.0 / p_); break;
      case SpaceKind::Linf: r[i] = d; break;
      case SpaceKind::L0: r[i] = d < space.aux_weight(i) ? d / space.aux_weight(i) : kInf; break;
    }
  }
  return Fn(std::move(r));
}

std::string SpaceType::label() const {
  switch (kind_) {
    case SpaceKind::Lp: {
      nlohmann::json j = p_;
      return "L" + j.dump();
    }
    case SpaceKind::Linf: return "Linf";
    case SpaceKind::L0: return "L0";
  }
  return {};
}

nlohmann::json to_json(const SpaceType& t) {
  switch (t.kind()) {
    case SpaceKind::Lp: return {{"Lp", t.exponent()}};
    case SpaceKind::Linf: return "Linf";
    case SpaceKind::L0: return "L0";
  }
  return nullptr;
}

SpaceType space_type_from_json(const nlohmann::json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "Linf") return SpaceType::linf();
    if (s == "L0") return SpaceType::l0();
    if (s == "L1") return SpaceType::lp(1.0);
    if (s == "L2") return SpaceType::lp(2.0);
  } else if (j.is_object() && j.size() == 1 && j.contains("Lp") && j["Lp"].is_number()) {
    return SpaceType::lp(j["Lp"].get<double>());
  }
  throw Error(ErrorCode::InvalidStructure, "space kind must be \"Linf\", \"L0\" or {\"Lp\": p}");
}

}  // namespace rieszmod::finite
