#pragma once

#include <cstddef>
#include <vector>

#include "rieszmod/finite/structure.hpp"

namespace rieszmod::finite {

/// Atoms of the Boolean algebra generated by a family of idempotents, and
/// each generator as a set of atom indices.
struct StoneAtoms {
  std::vector<Fn> atoms;
  std::vector<std::vector<std::size_t>> embedding;
};

/// Atoms are the nonzero products of generators and complements, ordered by
/// the first point where they are nonzero. Throws NonIdempotentInput.
StoneAtoms stone_atoms(const std::vector<Fn>& generators);

/// The set of atoms below an element of the generated algebra; throws
/// InvalidInput if e is not in it.
std::vector<std::size_t> represent(const StoneAtoms& s, const Fn& e);
/// Supremum of the listed atoms.
Fn realize(const StoneAtoms& s, const std::vector<std::size_t>& atom_set);

/// u + v - 2uv and uv.
Fn boolean_sum(const Fn& u, const Fn& v);
Fn boolean_product(const Fn& u, const Fn& v);

}  // namespace rieszmod::finite
