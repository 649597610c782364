#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "rieszmod/module/fiber_module.hpp"

namespace rieszmod::hom {

using finite::Fn;
using module::FiberModule;
using module::FiberNorm;
using module::ModuleElement;
using module::ModulePtr;
using module::Submodule;

/// sup { to(T x) : from(x) <= 1 }. Exact when one side is polyhedral
/// (l^1 / l^inf based), both are Euclidean, or the target is a line;
/// otherwise seeded gradient ascent on the sphere with 32 restarts.
double operator_norm(const Matrix& t, const FiberNorm& from, const FiberNorm& to);

/// A superset of the extreme points of a polyhedral unit ball; empty for
/// norms that are not polyhedral.
std::vector<Vector> unit_ball_vertices(const FiberNorm& n);

/// A module map given fiberwise. Target atom t reads the source fiber at
/// source_atom(t); the identity assignment gives the U-linear maps, other
/// assignments the maps that are linear over a precomposition hom.
class HomElement {
 public:
  /// matrices[t] is dim_target(t) x dim_source(source_atom(t)). Throws
  /// DimensionMismatch on shape errors and InvalidInput on a bad atom
  /// assignment.
  HomElement(ModulePtr source, ModulePtr target, std::vector<Matrix> matrices,
             std::optional<std::vector<std::size_t>> source_atoms = std::nullopt);

  static HomElement identity(const ModulePtr& m);
  static HomElement zero(const ModulePtr& source, const ModulePtr& target,
                         std::optional<std::vector<std::size_t>> source_atoms = std::nullopt);

  const ModulePtr& source() const { return source_; }
  const ModulePtr& target() const { return target_; }
  const std::vector<Matrix>& matrices() const { return matrices_; }
  const Matrix& at(std::size_t t) const { return matrices_[t]; }
  std::size_t source_atom(std::size_t t) const { return source_atoms_[t]; }
  const std::vector<std::size_t>& source_atoms() const { return source_atoms_; }
  bool is_untwisted() const;

  ModuleElement operator()(const ModuleElement& v) const;

 private:
  ModulePtr source_;
  ModulePtr target_;
  std::vector<Matrix> matrices_;
  std::vector<std::size_t> source_atoms_;
};

/// Atomwise operator norm.
Fn hom_norm(const HomElement& t);

/// s after t.
HomElement compose(const HomElement& s, const HomElement& t);
HomElement operator+(const HomElement& a, const HomElement& b);
HomElement operator*(double c, const HomElement& t);
/// (u . T)(v) = u . T(v).
HomElement operator*(const Fn& u, const HomElement& t);
bool approx_equal(const HomElement& a, const HomElement& b, double tol = 1e-9);

/// The hom equal to homs[n] on block n; blocks partition the target atoms.
HomElement glue_homs(const finite::Partition& partition, const std::vector<HomElement>& homs);

/// Elements mapped to zero.
Submodule kernel(const HomElement& t);

}  // namespace rieszmod::hom
