#include "rieszmod/hom/dual.hpp"

#include <cmath>

#include "rieszmod/error.hpp"

namespace rieszmod::hom {

namespace {

constexpr double kDominationSlack = 1e-9;

bool is_dual_of(const FiberModule& dual, const FiberModule& m) {
  if (dual.size() != m.size()) return false;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (!(dual.fiber(i) == m.fiber(i).dual())) return false;
  }
  return true;
}

ModuleElement extend(const Submodule& n, const std::vector<Vector>& values, const Fn& g, const ModulePtr& dual) {
  const FiberModule& m = *n.module_ptr();
  if (values.size() != m.size()) throw Error(ErrorCode::DimensionMismatch, "one value vector per atom");
  m.structure().space().check(g);
  std::vector<Vector> omega(m.size());
  for (std::size_t a = 0; a < m.size(); ++a) {
    const std::string path = "/values/" + std::to_string(a);
    const Matrix& basis = n.basis(a);
    const auto d = static_cast<Eigen::Index>(m.dim(a));
    if (values[a].size() != basis.cols()) throw Error(ErrorCode::DimensionMismatch, "one value per basis vector", path);
    if (g[a] < 0.0) throw Error(ErrorCode::NegativeInput, "gauge must be nonnegative", "/g");
    omega[a] = Vector::Zero(d);
    if (values[a].size() == 0 || values[a].isZero(0.0)) continue;
    const FiberNorm& norm = m.fiber(a);
    const double gauge = g[a] * (1.0 + kDominationSlack);
    // f <= p on n iff inf_t gauge N(B t) - f . t is not -infinity.
    if (!norm.min_affine(Vector::Zero(d), basis, gauge, values[a]).bounded) {
      throw Error(ErrorCode::DominationViolated, "functional is not dominated on the submodule", path);
    }
    Matrix aug(d, basis.cols() + d);
    aug << basis, Matrix::Identity(d, d);
    const auto pivots = pivot_columns(aug);
    Matrix span = basis;
    Vector ell = values[a];
    for (std::size_t k = static_cast<std::size_t>(basis.cols()); k < pivots.size(); ++k) {
      const Vector z = aug.col(static_cast<Eigen::Index>(pivots[k]));
      // One-dimensional step: f(z) := inf { p(v + z) - f(v) : v in the span so far }.
      // At the bound, rounding can make the exact gauge look exceeded.
      auto step = norm.min_affine(z, span, g[a], ell);
      if (!step.bounded) step = norm.min_affine(z, span, gauge, ell);
      const double b = step.value;
      Matrix next_span(d, span.cols() + 1);
      next_span << span, z;
      span = std::move(next_span);
      Vector next_ell(ell.size() + 1);
      next_ell << ell, b;
      ell = std::move(next_ell);
    }
    omega[a] = span.transpose().partialPivLu().solve(ell);
  }
  return ModuleElement(dual, std::move(omega));
}

}  // namespace

ModulePtr dual_module(const ModulePtr& m, const finite::DualSystem& system) {
  if (!(system.base().space() == m->structure().space())) {
    throw Error(ErrorCode::SpaceMismatch, "dual system lives over another space");
  }
  std::vector<FiberNorm> fibers;
  for (const auto& f : m->fibers()) fibers.push_back(f.dual());
  return module::make_module(system.w_structure(), std::move(fibers));
}

ModulePtr dual_module(const ModulePtr& m) { return dual_module(m, finite::DualSystem::standard(m->structure())); }

ModulePtr scalar_module(const finite::FiniteFStructure& structure) {
  return module::make_module(structure, std::vector<FiberNorm>(structure.size(), FiberNorm::lp(1, 2.0)));
}

Fn pairing(const ModuleElement& omega, const ModuleElement& v) {
  if (!is_dual_of(omega.module(), v.module())) {
    throw Error(ErrorCode::ModuleMismatch, "functional does not act on this module");
  }
  Fn out = Fn::zeros(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = omega.at(i).dot(v.at(i));
  return out;
}

HomElement as_hom(const ModuleElement& omega, const ModulePtr& m, const finite::DualSystem& system) {
  if (!is_dual_of(omega.module(), *m)) throw Error(ErrorCode::ModuleMismatch, "functional does not act on this module");
  std::vector<Matrix> rows;
  for (const auto& w : omega.vectors()) rows.push_back(w.transpose());
  return HomElement(m, scalar_module(system.z_structure()), std::move(rows));
}

ModuleElement hahn_banach_extend(const Submodule& n, const std::vector<Vector>& values, const Fn& g,
                                 const finite::DualSystem& system) {
  return extend(n, values, g, dual_module(n.module_ptr(), system));
}

ModuleElement hahn_banach_extend(const Submodule& n, const std::vector<Vector>& values, const Fn& g) {
  return extend(n, values, g, dual_module(n.module_ptr()));
}

ModuleElement norming_functional(const ModuleElement& v) {
  std::vector<Vector> omega;
  for (std::size_t i = 0; i < v.size(); ++i) omega.push_back(v.module().fiber(i).norming(v.at(i)));
  return ModuleElement(dual_module(v.module_ptr()), std::move(omega));
}

BidualEmbedding bidual_embed(const ModulePtr& m) {
  const ModulePtr bidual = dual_module(dual_module(m));
  HomElement j(m, bidual, HomElement::identity(m).matrices());
  bool onto = true;
  for (std::size_t i = 0; i < m->size(); ++i) onto = onto && numerical_rank(j.at(i)) == bidual->dim(i);
  return {std::move(j), onto};
}

HomElement extend_from_generators(const std::vector<ModuleElement>& generators,
                                  const std::vector<ModuleElement>& images, const Fn& b,
                                  const std::optional<StructureHom>& phi) {
  if (generators.empty() || generators.size() != images.size()) {
    throw Error(ErrorCode::InvalidInput, "need one image per generator, and at least one generator");
  }
  const ModulePtr source = generators.front().module_ptr();
  const ModulePtr target = images.front().module_ptr();
  for (std::size_t k = 0; k < generators.size(); ++k) {
    module::require_same_module(generators[k], generators.front());
    module::require_same_module(images[k], images.front());
  }
  std::vector<std::size_t> map;
  if (phi) {
    map = phi->atom_map();
    if (phi->source().size() != source->size() || phi->target().size() != target->size()) {
      throw Error(ErrorCode::SpaceMismatch, "structure hom does not connect these modules");
    }
  } else {
    if (source->size() != target->size()) throw Error(ErrorCode::SpaceMismatch, "modules over different spaces");
    for (std::size_t i = 0; i < source->size(); ++i) map.push_back(i);
  }
  target->structure().space().check(b);
  const auto count = static_cast<Eigen::Index>(generators.size());
  std::vector<Matrix> ms;
  for (std::size_t t = 0; t < target->size(); ++t) {
    const std::size_t s = map[t];
    const std::string path = "/atoms/" + std::to_string(t);
    Matrix x(static_cast<Eigen::Index>(source->dim(s)), count), y(static_cast<Eigen::Index>(target->dim(t)), count);
    for (Eigen::Index k = 0; k < count; ++k) {
      x.col(k) = generators[static_cast<std::size_t>(k)].at(s);
      y.col(k) = images[static_cast<std::size_t>(k)].at(t);
    }
    if (numerical_rank(x) < source->dim(s)) {
      throw Error(ErrorCode::NotGenerating, "generators do not span a fiber", path);
    }
    const Matrix tm = x.rows() == 0 ? Matrix::Zero(y.rows(), 0) : Matrix(y * pseudo_inverse(x));
    if (y.size() > 0) {
      const double scale = 1.0 + y.cwiseAbs().maxCoeff();
      if ((tm * x - y).cwiseAbs().maxCoeff() > 1e-9 * scale) {
        throw Error(ErrorCode::InconsistentGenerators, "images are not linear in the generators", path);
      }
    }
    ms.push_back(tm);
  }
  HomElement out(source, target, std::move(ms), map);
  const Fn norms = hom_norm(out);
  for (std::size_t t = 0; t < norms.size(); ++t) {
    if (norms[t] > b[t] * (1.0 + 1e-9) + 1e-12) {
      throw Error(ErrorCode::BoundViolated, "extension exceeds the bound", "/atoms/" + std::to_string(t));
    }
  }
  return out;
}

}  // namespace rieszmod::hom
