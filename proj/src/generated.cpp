#include "rieszmod/constructions/generated.hpp"

#include <cmath>
#include <limits>

#include "rieszmod/error.hpp"
#include "rieszmod/finite/sampling.hpp"
#include "rieszmod/module/sampling.hpp"

namespace rieszmod::constructions {

namespace {

constexpr double kTol = 1e-9;
constexpr std::size_t kMaxReplayAtoms = 3;

Vector random_vector(Rng& rng, std::size_t n) {
  Vector v(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = rng.normal();
  return v;
}

bool fits(const Fn& lhs, const Fn& rhs) {
  for (std::size_t i = 0; i < lhs.size(); ++i) {
    if (lhs[i] > rhs[i] * (1.0 + kTol) + 1e-12) return false;
  }
  return true;
}

Matrix stack(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() + b.rows(), a.cols());
  out << a, b;
  return out;
}

finite::Partition singletons(std::size_t n) {
  std::vector<finite::Idem> parts;
  for (std::size_t i = 0; i < n; ++i) parts.emplace_back(Fn::indicator(n, {i}));
  return finite::Partition::of_unit(std::move(parts), Fn::zeros(n));
}

// The class [u_n, v_n] seen in the quotient form.
ModuleElement image_of(const GeneratedModule& gen, const finite::Partition& u, const std::vector<Vector>& v) {
  std::vector<ModuleElement> parts;
  for (const auto& x : v) parts.push_back(gen(x));
  return module::glue(module::AdmissibleFamily(u, std::move(parts)));
}

}  // namespace

void Graph::validate() const {
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const std::string path = "/edges/" + std::to_string(k);
    if (edges[k].u >= vertices.size() || edges[k].v >= vertices.size()) {
      throw Error(ErrorCode::InvalidInput, "edge refers to an unknown vertex", path);
    }
    if (!(edges[k].w > 0.0) || !std::isfinite(edges[k].w)) {
      throw Error(ErrorCode::InvalidInput, "edge weights must be positive", path + "/w");
    }
  }
}

SublinearMap SublinearMap::seminorm_family(std::size_t domain_dim, std::vector<Seminorm> atoms) {
  for (std::size_t a = 0; a < atoms.size(); ++a) {
    const auto& s = atoms[a];
    if (static_cast<std::size_t>(s.b.cols()) != domain_dim || static_cast<std::size_t>(s.b.rows()) != s.base.dim()) {
      throw Error(ErrorCode::DimensionMismatch, "seminorm matrix does not fit", "/atoms/" + std::to_string(a));
    }
  }
  SublinearMap m;
  m.kind_ = Kind::SeminormFamily;
  m.domain_dim_ = domain_dim;
  m.atoms_ = atoms.size();
  m.seminorms_ = std::move(atoms);
  return m;
}

SublinearMap SublinearMap::graph_gradient(const Graph& g, double p) {
  g.validate();
  if (!(p >= 1.0)) throw Error(ErrorCode::InvalidExponent, "gradient exponent must be at least 1", "/p");
  const std::size_t n = g.vertices.size();
  std::vector<std::vector<Vector>> rows(n);
  for (const auto& e : g.edges) {
    const double scale = std::isinf(p) ? 1.0 : std::pow(e.w, 1.0 / p);
    for (const auto& [x, y] : {std::pair{e.u, e.v}, std::pair{e.v, e.u}}) {
      Vector r = Vector::Zero(static_cast<Eigen::Index>(n));
      r(static_cast<Eigen::Index>(y)) += scale;
      r(static_cast<Eigen::Index>(x)) -= scale;
      rows[x].push_back(r);
    }
  }
  std::vector<Seminorm> atoms;
  for (std::size_t x = 0; x < n; ++x) {
    Matrix b(static_cast<Eigen::Index>(rows[x].size()), static_cast<Eigen::Index>(n));
    for (std::size_t k = 0; k < rows[x].size(); ++k) b.row(static_cast<Eigen::Index>(k)) = rows[x][k].transpose();
    atoms.push_back({std::move(b), FiberNorm::lp(rows[x].size(), p)});
  }
  SublinearMap m = seminorm_family(n, std::move(atoms));
  m.kind_ = Kind::GraphGradient;
  return m;
}

SublinearMap SublinearMap::custom(std::size_t domain_dim, std::size_t atoms, std::function<Fn(const Vector&)> eval) {
  SublinearMap m;
  m.kind_ = Kind::Custom;
  m.domain_dim_ = domain_dim;
  m.atoms_ = atoms;
  m.eval_ = std::move(eval);
  return m;
}

const std::vector<SublinearMap::Seminorm>& SublinearMap::seminorms() const {
  if (kind_ == Kind::Custom) throw Error(ErrorCode::InvalidInput, "custom sublinear maps have no seminorm table");
  return seminorms_;
}

Fn SublinearMap::operator()(const Vector& v) const {
  if (static_cast<std::size_t>(v.size()) != domain_dim_) {
    throw Error(ErrorCode::DimensionMismatch, "vector does not match the domain dimension");
  }
  if (kind_ == Kind::Custom) {
    Fn out = eval_(v);
    if (out.size() != atoms_) throw Error(ErrorCode::DimensionMismatch, "custom map returned the wrong size");
    return out;
  }
  Fn out = Fn::zeros(atoms_);
  for (std::size_t a = 0; a < atoms_; ++a) out[a] = seminorms_[a].base(seminorms_[a].b * v);
  return out;
}

void check_sublinear(const SublinearMap& psi, Rng& rng, std::size_t samples) {
  const std::size_t n = psi.domain_dim();
  auto fail = [](const char* what) { throw Error(ErrorCode::NotSublinear, what); };
  for (std::size_t k = 0; k < samples; ++k) {
    const Vector v = random_vector(rng, n), w = random_vector(rng, n);
    const double lambda = rng.uniform(0.0, 5.0);
    const Fn pv = psi(v), pw = psi(w), pvw = psi(v + w), pneg = psi(-v), plam = psi(lambda * v);
    for (std::size_t a = 0; a < pv.size(); ++a) {
      const double scale = 1.0 + pv[a] + pw[a];
      if (!(pv[a] >= 0.0)) fail("values must be nonnegative");
      if (std::abs(pneg[a] - pv[a]) > kTol * scale) fail("map is not symmetric");
      if (std::abs(plam[a] - lambda * pv[a]) > kTol * (1.0 + lambda) * scale) fail("map is not positively homogeneous");
      if (pvw[a] > pv[a] + pw[a] + kTol * scale) fail("map is not subadditive");
    }
  }
  if (psi(Vector::Zero(static_cast<Eigen::Index>(n))) != Fn::zeros(psi.atoms())) fail("psi(0) must vanish");
}

GeneratedModule::GeneratedModule(ModulePtr module, std::vector<Matrix> generator)
    : module_(std::move(module)), generator_(std::move(generator)) {
  if (generator_.size() != module_->size()) throw Error(ErrorCode::DimensionMismatch, "one generator block per atom");
  for (std::size_t a = 0; a < generator_.size(); ++a) {
    if (static_cast<std::size_t>(generator_[a].rows()) != module_->dim(a) ||
        generator_[a].cols() != generator_.front().cols()) {
      throw Error(ErrorCode::DimensionMismatch, "generator block does not fit its fiber");
    }
  }
}

std::size_t GeneratedModule::domain_dim() const {
  return generator_.empty() ? 0 : static_cast<std::size_t>(generator_.front().cols());
}

ModuleElement GeneratedModule::operator()(const Vector& v) const {
  if (static_cast<std::size_t>(v.size()) != domain_dim()) {
    throw Error(ErrorCode::DimensionMismatch, "vector does not match the domain dimension");
  }
  std::vector<Vector> out;
  for (const auto& g : generator_) out.push_back(g * v);
  return ModuleElement(module_, std::move(out));
}

GeneratedModule generate_module(const SublinearMap& psi, const FiniteFStructure& structure) {
  if (psi.atoms() != structure.size()) {
    throw Error(ErrorCode::SpaceMismatch, "sublinear map and structure disagree on the atoms");
  }
  if (psi.kind() == SublinearMap::Kind::Custom) {
    Rng rng(0x7073ULL);
    check_sublinear(psi, rng);
    throw Error(ErrorCode::InvalidInput, "custom sublinear maps cannot be tabulated; use a seminorm family");
  }
  const auto n = static_cast<Eigen::Index>(psi.domain_dim());
  std::vector<FiberNorm> fibers;
  std::vector<Matrix> generator;
  for (const auto& s : psi.seminorms()) {
    // psi_a(v) = base(B v) = base(C G v) with C the independent columns of B.
    const auto pivots = pivot_columns(s.b);
    const auto r = static_cast<Eigen::Index>(pivots.size());
    if (r == 0) {
      fibers.push_back(s.base.dim() == 0 ? s.base : FiberNorm::lp(0, 2.0));
      generator.push_back(Matrix::Zero(0, n));
      continue;
    }
    const Matrix c = select_columns(s.b, pivots);
    const bool plain = is_exact_identity(c);
    Matrix g = plain ? s.b : Matrix(pseudo_inverse(c) * s.b);
    for (Eigen::Index k = 0; k < r; ++k) {
      g.col(static_cast<Eigen::Index>(pivots[static_cast<std::size_t>(k)])) = Vector::Unit(r, k);
    }
    fibers.push_back(plain ? s.base : FiberNorm::mapped(s.base, c));
    generator.push_back(std::move(g));
  }
  return GeneratedModule(module::make_module(structure, std::move(fibers)), std::move(generator));
}

HomElement universal_factor(const GeneratedModule& gen, const ModulePtr& target, const std::vector<Matrix>& s,
                            const Fn& b, const std::optional<StructureHom>& phi) {
  const auto& src = *gen.module();
  const StructureHom map_hom = phi ? *phi : StructureHom::identity(src.structure());
  const auto& map = map_hom.atom_map();
  if (map_hom.source().size() != src.size() || map_hom.target().size() != target->size()) {
    throw Error(ErrorCode::SpaceMismatch, "structure hom does not connect these modules");
  }
  if (s.size() != target->size()) throw Error(ErrorCode::DimensionMismatch, "one map block per target atom");
  target->structure().space().check(b);
  const auto n = static_cast<Eigen::Index>(gen.domain_dim());
  std::vector<Matrix> phis;
  for (std::size_t t = 0; t < target->size(); ++t) {
    const std::string path = "/s/" + std::to_string(t);
    if (static_cast<std::size_t>(s[t].rows()) != target->dim(t) || s[t].cols() != n) {
      throw Error(ErrorCode::DimensionMismatch, "map block does not fit", path);
    }
    const std::size_t a = map[t];
    const Matrix& g = gen.generator(a);
    for (Eigen::Index i = 0; i < n; ++i) {
      const double lhs = target->fiber(t)(s[t].col(i));
      const double rhs = b[t] * src.fiber(a)(g.col(i));
      if (lhs > rhs * (1.0 + kTol) + 1e-12) throw Error(ErrorCode::BoundViolated, "domination fails on a basis vector", path);
    }
    Matrix f = g.rows() == 0 ? Matrix::Zero(s[t].rows(), 0) : Matrix(s[t] * pseudo_inverse(g));
    if (s[t].size() > 0 && (f * g - s[t]).cwiseAbs().maxCoeff() > kTol * (1.0 + s[t].cwiseAbs().maxCoeff())) {
      throw Error(ErrorCode::BoundViolated, "map does not vanish where psi does", path);
    }
    phis.push_back(std::move(f));
  }
  HomElement out(gen.module(), target, std::move(phis), map);
  if (!fits(hom::hom_norm(out), b)) throw Error(ErrorCode::BoundViolated, "factor exceeds the bound");
  return out;
}

FaithfulReport faithful_replay(const SublinearMap& psi, const GeneratedModule& gen, Rng& rng, std::size_t sequences) {
  const std::size_t atoms = gen.module()->size();
  if (atoms > kMaxReplayAtoms) throw Error(ErrorCode::InvalidInput, "the replay is limited to 3 atoms");
  const std::size_t n = psi.domain_dim();
  FaithfulReport report;
  auto block_of = [&](const finite::Partition& u, std::size_t a) {
    for (std::size_t k = 0; k < u.size(); ++k)
      if (u[k][a] == 1.0) return k;
    return u.size();
  };
  for (std::size_t round = 0; round < sequences; ++round) {
    ++report.sequences;
    const auto u = finite::random_partition(rng, atoms, 3);
    std::vector<Vector> v;
    for (std::size_t k = 0; k < u.size(); ++k) v.push_back(random_vector(rng, n));
    const ModuleElement x = image_of(gen, u, v);

    // |[u_n, v_n]| = sup_n u_n psi(v_n).
    const Fn lhs = module::pointwise_norm(x);
    for (std::size_t a = 0; a < atoms; ++a) {
      const double rhs = psi(v[block_of(u, a)])[a];
      const double err = std::abs(lhs[a] - rhs);
      report.max_norm_error = std::max(report.max_norm_error, err);
      if (err > kTol * (1.0 + rhs)) report.norms_match = false;
    }

    // A second sequence, equivalent by construction half of the time.
    const auto w = finite::random_partition(rng, atoms, 3);
    std::vector<Vector> wv;
    const bool make_equivalent = rng.coin();
    for (std::size_t m = 0; m < w.size(); ++m) {
      Vector cand = random_vector(rng, n);
      if (make_equivalent) {
        Matrix lhs_stack(0, static_cast<Eigen::Index>(n));
        Matrix rhs_stack(0, 1);
        for (std::size_t a = 0; a < atoms; ++a) {
          if (w[m][a] != 1.0) continue;
          const Matrix& g = gen.generator(a);
          lhs_stack = stack(lhs_stack, g);
          rhs_stack = stack(rhs_stack, g * v[block_of(u, a)]);
        }
        if (lhs_stack.rows() > 0) {
          const auto ls = least_squares(lhs_stack, rhs_stack);
          const Matrix kernel = null_space(lhs_stack);
          cand = ls.x.col(0);
          if (kernel.cols() > 0) cand += kernel * random_vector(rng, static_cast<std::size_t>(kernel.cols()));
        }
      }
      wv.push_back(cand);
    }
    const ModuleElement y = image_of(gen, w, wv);
    bool related = true;
    for (std::size_t k = 0; k < u.size(); ++k) {
      for (std::size_t m = 0; m < w.size(); ++m) {
        const Fn d = psi(v[k] - wv[m]);
        const Fn s1 = psi(v[k]), s2 = psi(wv[m]);
        for (std::size_t a = 0; a < atoms; ++a) {
          if (u[k][a] * w[m][a] * d[a] > kTol * (1.0 + s1[a] + s2[a])) related = false;
        }
      }
    }
    if (related != module::approx_equal(x, y, kTol)) report.equivalence_matches = false;

    // Sum and scalar action on classes.
    std::vector<finite::Idem> cells;
    std::vector<Vector> sums;
    for (std::size_t k = 0; k < u.size(); ++k) {
      for (std::size_t m = 0; m < w.size(); ++m) {
        const Fn cell = u[k] * w[m];
        if (cell == Fn::zeros(atoms)) continue;
        cells.emplace_back(cell);
        sums.push_back(v[k] + wv[m]);
      }
    }
    const auto uw = finite::Partition::of_unit(std::move(cells), Fn::zeros(atoms));
    if (!module::approx_equal(image_of(gen, uw, sums), x + y, kTol)) report.operations_match = false;
    Fn lambda = Fn::zeros(atoms);
    std::vector<finite::Idem> lcells;
    std::vector<Vector> scaled;
    for (std::size_t a = 0; a < atoms; ++a) lambda[a] = rng.uniform(-2.0, 2.0);
    for (std::size_t a = 0; a < atoms; ++a) {
      for (std::size_t k = 0; k < u.size(); ++k) {
        const Fn cell = Fn::indicator(atoms, {a}) * u[k];
        if (cell == Fn::zeros(atoms)) continue;
        lcells.emplace_back(cell);
        scaled.push_back(lambda[a] * v[k]);
      }
    }
    const auto lu = finite::Partition::of_unit(std::move(lcells), Fn::zeros(atoms));
    if (!module::approx_equal(image_of(gen, lu, scaled), lambda * x, kTol)) report.operations_match = false;

    // Every element is a class: solve per atom and glue over singletons.
    const ModuleElement z = module::random_element(rng, gen.module());
    std::vector<Vector> pre;
    for (std::size_t a = 0; a < atoms; ++a) {
      const Matrix& g = gen.generator(a);
      pre.push_back(g.rows() == 0 ? Vector(Vector::Zero(static_cast<Eigen::Index>(n)))
                                  : Vector(least_squares(g, z.at(a)).x.col(0)));
    }
    if (!module::approx_equal(image_of(gen, singletons(atoms), pre), z, kTol)) report.surjective = false;
  }
  return report;
}

}  // namespace rieszmod::constructions
