#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "rieszmod/finite/structure.hpp"
#include "rieszmod/linalg.hpp"

namespace rieszmod::hom {

using finite::FiniteFStructure;
using finite::Fn;

/// A unital algebra map between function spaces. Precompositions
/// f -> f o map carry an atom map (target atom -> source atom); any other
/// positive unital matrix is kept as is and refused by the constructions.
class StructureHom {
 public:
  /// Throws InvalidInput on an out-of-range or wrongly sized map.
  static StructureHom precomposition(FiniteFStructure source, FiniteFStructure target,
                                     std::vector<std::size_t> atom_map);
  static StructureHom identity(const FiniteFStructure& s);
  /// Rows index target atoms. 0/1 matrices with one 1 per row become
  /// precompositions; other matrices must be nonnegative with unit row sums.
  static StructureHom from_matrix(FiniteFStructure source, FiniteFStructure target, const Matrix& m);

  const FiniteFStructure& source() const { return source_; }
  const FiniteFStructure& target() const { return target_; }
  bool is_precomposition() const { return atom_map_.has_value(); }
  /// Throws UnsupportedHom for a general matrix.
  const std::vector<std::size_t>& atom_map() const;
  Matrix matrix() const;

  Fn operator()(const Fn& f) const;

 private:
  StructureHom(FiniteFStructure source, FiniteFStructure target) : source_(std::move(source)), target_(std::move(target)) {}

  FiniteFStructure source_;
  FiniteFStructure target_;
  std::optional<std::vector<std::size_t>> atom_map_;
  Matrix matrix_;
};

/// max_y sum_{x -> y} mu_source(x) / mu_target(y): the least C with
/// point_map_# mu_source <= C mu_target.
double compression_constant(const std::vector<std::size_t>& point_map, const finite::FiniteMeasureSpace& source,
                            const finite::FiniteMeasureSpace& target);

}  // namespace rieszmod::hom
