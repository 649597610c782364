#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rieszmod/hom/hom.hpp"
#include "rieszmod/hom/structure_hom.hpp"
#include "rieszmod/rng.hpp"

namespace rieszmod::constructions {

using finite::FiniteFStructure;
using finite::Fn;
using hom::HomElement;
using hom::StructureHom;
using module::FiberNorm;
using module::ModuleElement;
using module::ModulePtr;

/// Weighted undirected graph; edges refer to vertex indices.
struct Graph {
  struct Edge {
    std::size_t u;
    std::size_t v;
    double w = 1.0;
  };
  std::vector<std::string> vertices;
  std::vector<Edge> edges;

  /// Throws InvalidInput on bad indices or nonpositive weights.
  void validate() const;
};

/// A symmetric sublinear map from R^n into nonnegative functions on the
/// atoms. Seminorm families are psi(v)(a) = base_a(B_a v); custom maps are
/// black boxes, good for the sublinearity check only.
class SublinearMap {
 public:
  enum class Kind { GraphGradient, SeminormFamily, Custom };

  struct Seminorm {
    Matrix b;
    FiberNorm base;
  };

  /// Throws DimensionMismatch when some B_a does not have domain_dim
  /// columns or does not match its base norm.
  static SublinearMap seminorm_family(std::size_t domain_dim, std::vector<Seminorm> atoms);
  /// psi(f)(x) = (sum over edges xy of w |f(y) - f(x)|^p)^(1/p).
  static SublinearMap graph_gradient(const Graph& g, double p);
  static SublinearMap custom(std::size_t domain_dim, std::size_t atoms, std::function<Fn(const Vector&)> eval);

  Kind kind() const { return kind_; }
  std::size_t domain_dim() const { return domain_dim_; }
  std::size_t atoms() const { return atoms_; }
  /// Throws InvalidInput for custom maps.
  const std::vector<Seminorm>& seminorms() const;

  Fn operator()(const Vector& v) const;

 private:
  SublinearMap() = default;

  Kind kind_ = Kind::SeminormFamily;
  std::size_t domain_dim_ = 0;
  std::size_t atoms_ = 0;
  std::vector<Seminorm> seminorms_;
  std::function<Fn(const Vector&)> eval_;
};

/// Samples symmetry, homogeneity and subadditivity; throws NotSublinear
/// on a violation beyond 1e-9 (relative).
void check_sublinear(const SublinearMap& psi, Rng& rng, std::size_t samples = 200);

/// The module generated by psi and its generator map T, v -> T v, with
/// |T v| = psi(v). The fiber at a is R^n modulo the null space of psi_a.
class GeneratedModule {
 public:
  GeneratedModule(ModulePtr module, std::vector<Matrix> generator);

  const ModulePtr& module() const { return module_; }
  /// T v at atom a is generator(a) v.
  const Matrix& generator(std::size_t a) const { return generator_[a]; }
  const std::vector<Matrix>& generators() const { return generator_; }
  std::size_t domain_dim() const;

  ModuleElement operator()(const Vector& v) const;

 private:
  ModulePtr module_;
  std::vector<Matrix> generator_;
};

/// Throws NotSublinear or InvalidInput for a custom map, SpaceMismatch
/// when psi and the structure disagree on the number of atoms.
GeneratedModule generate_module(const SublinearMap& psi, const FiniteFStructure& structure);

/// The unique Phi with Phi o T = S and |Phi v| <= b phi(|v|), where S v at
/// target atom t is s[t] v. Throws BoundViolated when the domination fails
/// on a basis vector of R^n (or anywhere on a fiber).
HomElement universal_factor(const GeneratedModule& gen, const ModulePtr& target, const std::vector<Matrix>& s,
                            const Fn& b, const std::optional<StructureHom>& phi = std::nullopt);

/// Outcome of replaying the construction by classes of admissible
/// sequences (partition, vectors) against the quotient form.
struct FaithfulReport {
  std::size_t sequences = 0;
  double max_norm_error = 0.0;
  bool norms_match = true;
  bool equivalence_matches = true;
  bool operations_match = true;
  bool surjective = true;

  bool ok() const { return norms_match && equivalence_matches && operations_match && surjective; }
};

/// Throws InvalidInput for more than 3 atoms.
FaithfulReport faithful_replay(const SublinearMap& psi, const GeneratedModule& gen, Rng& rng,
                               std::size_t sequences = 200);

}  // namespace rieszmod::constructions
