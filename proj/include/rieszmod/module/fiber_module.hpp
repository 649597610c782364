#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "rieszmod/finite/fn.hpp"
#include "rieszmod/finite/structure.hpp"
#include "rieszmod/linalg.hpp"
#include "rieszmod/module/fiber_norm.hpp"

namespace rieszmod::module {

using finite::Fn;
using finite::FiniteFStructure;

/// A normed module over a finite structure, one finite-dimensional normed
/// space per atom.
class FiberModule {
 public:
  /// Throws DimensionMismatch unless there is one fiber per atom.
  FiberModule(FiniteFStructure structure, std::vector<FiberNorm> fibers);

  const FiniteFStructure& structure() const { return structure_; }
  const std::vector<FiberNorm>& fibers() const { return fibers_; }
  const FiberNorm& fiber(std::size_t i) const { return fibers_[i]; }
  std::size_t size() const { return fibers_.size(); }
  std::size_t dim(std::size_t i) const { return fibers_[i].dim(); }
  std::vector<std::size_t> dims() const;

  friend bool operator==(const FiberModule&, const FiberModule&) = default;

 private:
  FiniteFStructure structure_;
  std::vector<FiberNorm> fibers_;
};

using ModulePtr = std::shared_ptr<const FiberModule>;

ModulePtr make_module(FiniteFStructure structure, std::vector<FiberNorm> fibers);

/// Same module object, or equal descriptions.
bool same_module(const ModulePtr& a, const ModulePtr& b);

class ModuleElement {
 public:
  /// Throws DimensionMismatch unless each vector matches its fiber.
  ModuleElement(ModulePtr module, std::vector<Vector> vectors);
  static ModuleElement zero(ModulePtr module);

  const ModulePtr& module_ptr() const { return module_; }
  const FiberModule& module() const { return *module_; }
  const std::vector<Vector>& vectors() const { return vectors_; }
  const Vector& at(std::size_t i) const { return vectors_[i]; }
  std::size_t size() const { return vectors_.size(); }

 private:
  ModulePtr module_;
  std::vector<Vector> vectors_;
};

/// Throws ModuleMismatch unless both live in the same module.
void require_same_module(const ModuleElement& a, const ModuleElement& b);

ModuleElement operator+(const ModuleElement& a, const ModuleElement& b);
ModuleElement operator-(const ModuleElement& a, const ModuleElement& b);
ModuleElement operator-(const ModuleElement& a);
ModuleElement operator*(double s, const ModuleElement& v);
/// Scalar function acting atomwise.
ModuleElement operator*(const Fn& u, const ModuleElement& v);

/// Exact equality of all coordinates (and of the modules).
bool operator==(const ModuleElement& a, const ModuleElement& b);
/// Coordinates within tol of each other, relative to their size.
bool approx_equal(const ModuleElement& a, const ModuleElement& b, double tol = 1e-9);

/// The fiber norm of each fiber vector.
Fn pointwise_norm(const ModuleElement& v);

/// d_V(|v - w|, 0).
double module_distance(const ModuleElement& v, const ModuleElement& w);

/// 1 exactly on the atoms where v vanishes.
finite::Idem zero_indicator(const ModuleElement& v);

/// Partition of the unit together with one element per block.
class AdmissibleFamily {
 public:
  /// Throws InvalidInput on a count mismatch, ModuleMismatch when the
  /// elements disagree on the module, NotAPartition unless the blocks
  /// partition the unit.
  AdmissibleFamily(finite::Partition partition, std::vector<ModuleElement> elements);

  const finite::Partition& partition() const { return partition_; }
  const std::vector<ModuleElement>& elements() const { return elements_; }

 private:
  finite::Partition partition_;
  std::vector<ModuleElement> elements_;
};

/// The unique v with u_n v = u_n v_n for every block.
ModuleElement glue(const AdmissibleFamily& family);

/// Glueing in V viewed as a module over itself:
/// sup_n u_n v_n^+ - sup_n u_n v_n^-.
Fn glue_scalar(const finite::Partition& partition, const std::vector<Fn>& values);

/// Fiberwise linear subspaces, one basis (columns) per atom.
class Submodule {
 public:
  /// Columns are reduced to a linearly independent subset. Throws
  /// DimensionMismatch when a basis does not fit its fiber.
  Submodule(ModulePtr module, const std::vector<Matrix>& spans);

  static Submodule zero(ModulePtr module);
  static Submodule whole(ModulePtr module);
  /// u . M: the full fiber on the atoms of u, zero elsewhere.
  static Submodule restricted(ModulePtr module, const Fn& u);
  /// The smallest submodule containing the given elements (U-span).
  static Submodule spanned_by(ModulePtr module, const std::vector<ModuleElement>& generators);

  const ModulePtr& module_ptr() const { return module_; }
  const Matrix& basis(std::size_t i) const { return bases_[i]; }
  std::vector<std::size_t> dims() const;

  bool contains(const ModuleElement& v, double tol = 1e-9) const;

 private:
  ModulePtr module_;
  std::vector<Matrix> bases_;
};

/// N1 + N2.
Submodule operator+(const Submodule& a, const Submodule& b);
/// True when N1 and N2 meet only in zero.
bool is_direct_sum(const Submodule& a, const Submodule& b);

/// inf { |v + w| : w in N }, atomwise. Throws DimensionMismatch when N
/// lives in a different module.
Fn quotient_norm(const ModuleElement& v, const Submodule& n);

struct DimensionPart {
  std::size_t dim;
  Fn part;
};

/// Atoms grouped by fiber dimension, in increasing order of dimension. The
/// parts partition the unit.
std::vector<DimensionPart> dimensional_decomposition(const FiberModule& module);

/// True iff on every atom of u the fiber vectors are linearly independent.
bool independence_check(const std::vector<ModuleElement>& vs, const Fn& u);

/// n elements that form a basis on every atom of `part`, given that all
/// those fibers have dimension n: the coordinate vectors there, zero
/// elsewhere.
std::vector<ModuleElement> local_basis(const ModulePtr& module, const Fn& part);

}  // namespace rieszmod::module
