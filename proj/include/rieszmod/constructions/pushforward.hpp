#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "rieszmod/constructions/generated.hpp"
#include "rieszmod/hom/dual.hpp"

namespace rieszmod::constructions {

struct Pushforward {
  /// Over phi's target, with m's V slot.
  ModulePtr module;
  /// v -> phi_* v, twisted by phi.
  HomElement map;
};

/// Generated by psi(v) = phi(|v|). For a precomposition the fiber at a
/// target atom t is a copy of m's fiber at atom_map(t). Throws
/// UnsupportedHom for general algebra maps and SpaceMismatch when m is not
/// over phi's source.
Pushforward pushforward_module(const StructureHom& phi, const ModulePtr& m);

/// The map with phi_* T o phi_* = phi_* o T, for an untwisted T.
HomElement pushforward_hom(const StructureHom& phi, const HomElement& t);

/// I_phi from the pushforward of the dual into the dual of the pushforward.
HomElement dual_embed(const StructureHom& phi, const ModulePtr& m);

struct Completion {
  ModulePtr module;
  HomElement embedding;
};

/// Finite modules are complete: (m, identity).
Completion complete(const ModulePtr& m);

/// The pullback along a point map (source atoms -> target atoms) of a
/// module over the target, as the pushforward under f -> f o point_map.
/// Throws CompressionViolated when max_compression is given and the
/// compression constant exceeds it.
Pushforward pullback_module(const std::vector<std::size_t>& point_map, const ModulePtr& m,
                            const FiniteFStructure& source, std::optional<double> max_compression = std::nullopt);

}  // namespace rieszmod::constructions
