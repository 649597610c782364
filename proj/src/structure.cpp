#include "rieszmod/finite/structure.hpp"

#include <algorithm>
#include <cmath>

#include "rieszmod/error.hpp"

namespace rieszmod::finite {

FiniteFStructure::FiniteFStructure(FiniteMeasureSpace space, SpaceType u, SpaceType v,
                                   std::optional<Fn> v_support)
    : space_(std::move(space)), u_(u), v_(v) {
  if (u_.kind() == SpaceKind::Lp) {
    throw Error(ErrorCode::InvalidStructure, "U must be Linf or L0");
  }
  if (v_support) {
    space_.check(*v_support);
    if (!is_indicator(*v_support)) {
      throw Error(ErrorCode::InvalidStructure, "v_support must be a 0/1 function");
    }
    v_support_ = std::move(*v_support);
  } else {
    v_support_ = Fn::ones(space_.size());
  }
}

namespace {

// 1/p, with L0 reported as nullopt.
std::optional<double> reciprocal_exponent(const SpaceType& t) {
  switch (t.kind()) {
    case SpaceKind::Lp: return 1.0 / t.exponent();
    case SpaceKind::Linf: return 0.0;
    case SpaceKind::L0: return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace

DualSystem::DualSystem(FiniteFStructure base, SpaceType w, SpaceType z)
    : base_(std::move(base)), w_(w), z_(z) {
  const auto rv = reciprocal_exponent(base_.v());
  const auto rw = reciprocal_exponent(w_);
  const auto rz = reciprocal_exponent(z_);
  if (!rv || !rw) {
    if (rz) throw Error(ErrorCode::InvalidDualSystem, "an L0 factor forces Z = L0");
    return;
  }
  if (!rz) return;  // Z = L0 contains every product
  if (std::abs(*rv + *rw - *rz) > 1e-12) {
    throw Error(ErrorCode::InvalidDualSystem,
                "exponents violate 1/p + 1/q = 1/r for " + base_.v().label() + ", " + w_.label() + ", " +
                    z_.label());
  }
}

DualSystem DualSystem::standard(const FiniteFStructure& base) {
  if (base.v().kind() == SpaceKind::L0) return DualSystem(base, SpaceType::linf(), SpaceType::l0());
  return DualSystem(base, SpaceType::lp(conjugate_exponent(base.v().exponent())), SpaceType::lp(1.0));
}

Fn support_of(const std::vector<Fn>& vs) {
  if (vs.empty()) throw Error(ErrorCode::InvalidInput, "support of an empty family needs a space size");
  Fn out = Fn::zeros(vs.front().size());
  for (const auto& v : vs) out = join(out, nonzero_indicator(v));
  return out;
}

Fn supporting_element(const FiniteFStructure& structure) {
  // V is spanned by the indicators of the atoms it allows; their union is S(V).
  std::vector<Fn> spanning;
  for (std::size_t i = 0; i < structure.size(); ++i) {
    spanning.push_back(structure.v_support()[i] * Fn::indicator(structure.size(), {i}));
  }
  return support_of(spanning);
}

SupWitness countable_sup(const std::vector<Fn>& family) {
  if (family.empty()) throw Error(ErrorCode::InvalidInput, "supremum of an empty family");
  Fn sup = family.front();
  std::vector<std::size_t> best(sup.size(), 0);
  for (std::size_t k = 1; k < family.size(); ++k) {
    require_same_size(sup, family[k]);
    for (std::size_t i = 0; i < sup.size(); ++i) {
      if (family[k][i] > sup[i]) {
        sup[i] = family[k][i];
        best[i] = k;
      }
    }
  }
  std::sort(best.begin(), best.end());
  best.erase(std::unique(best.begin(), best.end()), best.end());
  return {std::move(sup), std::move(best)};
}

}  // namespace rieszmod::finite
