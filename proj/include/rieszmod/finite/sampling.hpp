#pragma once

#include <vector>

#include "rieszmod/finite/structure.hpp"
#include "rieszmod/order/riesz.hpp"
#include "rieszmod/rng.hpp"

namespace rieszmod::finite {

/// Values in [-scale, scale] with a share of exact zeros and small integers
/// so that ties and sign boundaries get exercised.
Fn random_fn(Rng& rng, std::size_t n, double scale = 4.0);
Fn random_nonnegative_fn(Rng& rng, std::size_t n, double scale = 4.0);
Fn random_idempotent(Rng& rng, std::size_t n);
/// Random assignment of atoms to at most `max_parts` blocks; empty blocks
/// are dropped and blocks are ordered by their first atom.
Partition random_partition(Rng& rng, std::size_t n, std::size_t max_parts);

std::vector<order::LawTriple<Fn>> random_triples(Rng& rng, std::size_t count, std::size_t n);
/// Triples over spaces whose atom count varies in [min_atoms, max_atoms].
std::vector<order::LawTriple<Fn>> random_triples(Rng& rng, std::size_t count, std::size_t min_atoms,
                                                 std::size_t max_atoms);

/// Weights in [0.5, 2], U = Linf or L0, V one of L1, L2, L3, Linf, L0.
FiniteFStructure random_structure(Rng& rng, std::size_t n);

}  // namespace rieszmod::finite
