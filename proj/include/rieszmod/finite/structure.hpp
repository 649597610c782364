#pragma once

#include <optional>
#include <vector>

#include "rieszmod/finite/function_spaces.hpp"
#include "rieszmod/finite/measure_space.hpp"
#include "rieszmod/order/idempotent.hpp"

namespace rieszmod::finite {

using Idem = order::Idempotent<Fn>;
using Partition = order::FinitePartition<Fn>;

/// (U, V) over a finite space. `v_support` restricts V to the functions
/// vanishing off it (a solid subspace); by default V is everything.
class FiniteFStructure {
 public:
  FiniteFStructure(FiniteMeasureSpace space, SpaceType u, SpaceType v,
                   std::optional<Fn> v_support = std::nullopt);

  const FiniteMeasureSpace& space() const { return space_; }
  const SpaceType& u() const { return u_; }
  const SpaceType& v() const { return v_; }
  const Fn& v_support() const { return v_support_; }
  std::size_t size() const { return space_.size(); }

  double d_u(const Fn& f, const Fn& g) const { return u_.distance(f, g, space_); }
  double d_v(const Fn& f, const Fn& g) const { return v_.distance(f, g, space_); }
  double d_v0(const Fn& f) const { return v_.distance_from_zero(f, space_); }

  /// Same space and U with another V slot; used for W and Z of a dual system.
  FiniteFStructure with_v(SpaceType v) const { return FiniteFStructure(space_, u_, v, v_support_); }

  friend bool operator==(const FiniteFStructure&, const FiniteFStructure&) = default;

 private:
  FiniteMeasureSpace space_;
  SpaceType u_;
  SpaceType v_;
  Fn v_support_;
};

/// Two structures over the same (U) paired into Z = VW.
class DualSystem {
 public:
  /// Throws InvalidDualSystem unless Z = VW: with Lp/Linf slots this means
  /// 1/p + 1/q = 1/r; an L0 factor forces Z = L0.
  DualSystem(FiniteFStructure base, SpaceType w, SpaceType z);

  /// W = L^q with q conjugate to p and Z = L1 for normed V; W = Linf and
  /// Z = L0 for V = L0.
  static DualSystem standard(const FiniteFStructure& base);

  const FiniteFStructure& base() const { return base_; }
  const SpaceType& w() const { return w_; }
  const SpaceType& z() const { return z_; }
  FiniteFStructure w_structure() const { return base_.with_v(w_); }
  FiniteFStructure z_structure() const { return base_.with_v(z_); }

 private:
  FiniteFStructure base_;
  SpaceType w_;
  SpaceType z_;
};

/// Indicator of the union of the supports.
Fn support_of(const std::vector<Fn>& vs);

/// h in V+ with h <= 1 and {h > 0} = S(V); at finite scale the indicator
/// of the support of V.
Fn supporting_element(const FiniteFStructure& structure);

/// Supremum of a family together with a finite subfamily attaining it
/// (the first index achieving the maximum at each atom, deduplicated).
struct SupWitness {
  Fn sup;
  std::vector<std::size_t> indices;
};
SupWitness countable_sup(const std::vector<Fn>& family);

}  // namespace rieszmod::finite
