#pragma once

#include <cstddef>
#include <vector>

#include "rieszmod/hom/dual.hpp"
#include "rieszmod/rng.hpp"

namespace rieszmod::hilbert {

using finite::Fn;
using module::FiberModule;
using module::FiberNorm;
using module::ModuleElement;
using module::ModulePtr;
using module::Submodule;

/// Every fiber norm comes from an inner product.
bool is_hilbert(const FiberModule& m);

/// |v+w|^2 + |v-w|^2 - 2|v|^2 - 2|w|^2 atomwise; zero exactly for Hilbert
/// fibers, and a witness otherwise.
Fn parallelogram_defect(const ModuleElement& v, const ModuleElement& w);

/// max over samples of d(v, 0)^2 - d_Z(|v|^2, 0) with Z the standard pairing
/// target of m's structure; at most 0 (up to rounding) when the distances
/// are compatible.
double compatibility_gap(const ModulePtr& m, Rng& rng, std::size_t samples = 1000);

/// A module checked to be Hilbert with compatible distances. Throws
/// NotHilbert or HilbertCompatibility.
class HilbertModule {
 public:
  explicit HilbertModule(ModulePtr m, std::uint64_t seed = 0x4869ULL);

  const ModulePtr& module() const { return module_; }
  /// H_a with |x|^2 = x^T H_a x.
  const Matrix& gram(std::size_t a) const { return grams_[a]; }

 private:
  ModulePtr module_;
  std::vector<Matrix> grams_;
};

/// v . w atomwise. Throws NotHilbert.
Fn pointwise_inner(const ModuleElement& v, const ModuleElement& w);

/// |v||w| - |v . w|, nonnegative up to rounding.
Fn cauchy_schwarz_slack(const ModuleElement& v, const ModuleElement& w);

/// A closed convex subset of one fiber.
struct FiberSet {
  enum class Kind { Subspace, Box, Ball, Intersection };
  Kind kind = Kind::Subspace;
  Matrix basis;           // subspace
  Vector lo, hi;          // box
  Vector center;          // ball, radius in the fiber norm
  double radius = 0.0;
  std::vector<FiberSet> parts;  // intersection

  static FiberSet subspace(Matrix basis);
  static FiberSet box(Vector lo, Vector hi);
  static FiberSet ball(Vector center, double radius);
  static FiberSet intersection(std::vector<FiberSet> parts);
};

/// One fiber set per atom; such products are closed under glueing.
struct ConvexSet {
  std::vector<FiberSet> fibers;
};

/// The nearest point of c atomwise. Closed forms for subspaces and balls,
/// coordinate descent for boxes, Dykstra's algorithm for intersections.
/// Throws EmptySet, DimensionMismatch, NotHilbert.
ModuleElement project_convex(const ModuleElement& v, const ConvexSet& c);

/// |v - C| atomwise.
Fn distance_to_set(const ModuleElement& v, const ConvexSet& c);

/// True when every fiber vector of v lies in c, within tol relative.
bool contains(const ConvexSet& c, const ModuleElement& v, double tol = 1e-9);

/// The nearest point of n.
ModuleElement project_submodule(const ModuleElement& v, const Submodule& n);

Submodule orthogonal_complement(const Submodule& n);

/// <R(w), v> = v . w; R(w) lives in the dual module.
ModuleElement riesz_map(const ModuleElement& w);
/// The w with R(w) = eta, for eta in the dual of m.
ModuleElement riesz_inverse(const ModuleElement& eta, const ModulePtr& m);

/// Largest deviation between J(v) and R*(R(v)) over samples, relative to
/// |v|; reflexive when it is below 1e-10.
double reflexivity_defect(const ModulePtr& m, Rng& rng, std::size_t samples = 1000);
bool hilbert_reflexivity_check(const ModulePtr& m, Rng& rng, std::size_t samples = 1000);

}  // namespace rieszmod::hilbert
