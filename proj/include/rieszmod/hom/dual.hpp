#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "rieszmod/finite/structure.hpp"
#include "rieszmod/hom/hom.hpp"
#include "rieszmod/hom/structure_hom.hpp"

namespace rieszmod::hom {

/// Dual fibers over the W slot of the system. Functionals on a fiber are
/// vectors acting by dot product. Throws SpaceMismatch when the system is
/// over another space.
ModulePtr dual_module(const ModulePtr& m, const finite::DualSystem& system);
/// With the standard dual system of m's structure.
ModulePtr dual_module(const ModulePtr& m);

/// The module of scalars: one line with |.| per atom.
ModulePtr scalar_module(const finite::FiniteFStructure& structure);

/// <omega, v> atomwise. Throws ModuleMismatch unless omega lives in the
/// dual of v's module.
Fn pairing(const ModuleElement& omega, const ModuleElement& v);

/// omega as a map from m to the scalar module of the Z slot.
HomElement as_hom(const ModuleElement& omega, const ModulePtr& m, const finite::DualSystem& system);

/// A functional on n given by its values on n's basis vectors (values[a]
/// has one entry per basis column at atom a), extended to the whole module
/// below p(v) = g |v|. Throws DominationViolated when f <= p fails on n,
/// DimensionMismatch on malformed values. Where f vanishes the extension
/// is zero.
ModuleElement hahn_banach_extend(const Submodule& n, const std::vector<Vector>& values, const Fn& g,
                                 const finite::DualSystem& system);
ModuleElement hahn_banach_extend(const Submodule& n, const std::vector<Vector>& values, const Fn& g);

/// <omega, v> = |v| and |omega| = 1 exactly where v != 0.
ModuleElement norming_functional(const ModuleElement& v);

struct BidualEmbedding {
  HomElement j;
  /// Every fiber map of j is onto.
  bool reflexive;
};

/// J(v) = <., v> into the dual of the dual.
BidualEmbedding bidual_embed(const ModulePtr& m);

/// The hom with T(generators[k]) = images[k], twisted by phi when given
/// (then generators live over phi's source, images over its target).
/// Throws NotGenerating when the generators miss a direction of some
/// fiber, InconsistentGenerators when the images are not a linear function
/// of them, BoundViolated when |T| <= b fails.
HomElement extend_from_generators(const std::vector<ModuleElement>& generators,
                                  const std::vector<ModuleElement>& images, const Fn& b,
                                  const std::optional<StructureHom>& phi = std::nullopt);

}  // namespace rieszmod::hom
