#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/core.h>

#include "oracles.hpp"
#include "rieszmod/cli/cli.hpp"
#include "rieszmod/constructions/pushforward.hpp"
#include "rieszmod/finite/sampling.hpp"
#include "rieszmod/hilbert/hilbert.hpp"
#include "rieszmod/module/sampling.hpp"
#include "rieszmod/order/simple.hpp"

using namespace rieszmod;
using finite::FiniteMeasureSpace;
using finite::Fn;
using finite::SpaceType;
using hom::HomElement;
using module::FiberNorm;
using module::FiniteFStructure;
using module::ModuleElement;
using module::ModulePtr;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Collects the first failed condition and the largest observed error.
class Outcome {
 public:
  void require(bool cond, const std::string& what) {
    if (!cond && failure_.empty()) failure_ = what;
  }
  // err <= tol, keeping track of the worst err seen.
  void within(double err, double tol, const std::string& what) {
    worst_ = std::max(worst_, err);
    require(err <= tol, fmt::format("{} (error {:.3g} > {:.3g})", what, err, tol));
  }
  void note(const std::string& s) { notes_ += notes_.empty() ? s : "; " + s; }

  bool ok() const { return failure_.empty(); }
  std::string detail() const {
    std::string out = ok() ? notes_ : failure_;
    if (worst_ > 0.0) out += fmt::format("; max error {:.3g}", worst_);
    return out;
  }

 private:
  std::string failure_;
  std::string notes_;
  double worst_ = 0.0;
};

double rel(double got, double want) { return std::abs(got - want) / (1.0 + std::abs(want)); }

FiniteFStructure structure_of(std::size_t atoms, double p = 2.0) {
  return FiniteFStructure(FiniteMeasureSpace::uniform(atoms), SpaceType::linf(), SpaceType::lp(p));
}

ModulePtr module_of(std::vector<FiberNorm> fibers, double p = 2.0) {
  const std::size_t n = fibers.size();
  return module::make_module(structure_of(n, p), std::move(fibers));
}

Vector random_vector(Rng& rng, Eigen::Index n) {
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = rng.normal();
  return v;
}

Matrix random_matrix(Rng& rng, Eigen::Index r, Eigen::Index c) {
  Matrix m(r, c);
  for (Eigen::Index i = 0; i < r; ++i)
    for (Eigen::Index j = 0; j < c; ++j) m(i, j) = rng.normal();
  return m;
}

Matrix random_gram(Rng& rng, Eigen::Index d) {
  const Matrix a = random_matrix(rng, d, d);
  return a.transpose() * a + 0.2 * Matrix::Identity(d, d);
}

ModulePtr random_hilbert(Rng& rng, std::size_t atoms, std::size_t max_dim) {
  std::vector<FiberNorm> fibers;
  for (std::size_t a = 0; a < atoms; ++a) {
    const auto d = static_cast<Eigen::Index>(rng.index(max_dim + 1));
    fibers.push_back(rng.coin() ? FiberNorm::gram(random_gram(rng, d)) : FiberNorm::lp(static_cast<std::size_t>(d), 2.0));
  }
  return module_of(std::move(fibers));
}

HomElement random_hom(Rng& rng, const ModulePtr& s, const ModulePtr& t) {
  std::vector<Matrix> ms;
  for (std::size_t i = 0; i < t->size(); ++i) {
    ms.push_back(random_matrix(rng, static_cast<Eigen::Index>(t->dim(i)), static_cast<Eigen::Index>(s->dim(i))));
  }
  return HomElement(s, t, std::move(ms));
}

// Seminorms with rank-deficient matrices over random fiber norms.
constructions::SublinearMap random_seminorms(Rng& rng, std::size_t atoms, std::size_t n) {
  std::vector<constructions::SublinearMap::Seminorm> s;
  for (std::size_t a = 0; a < atoms; ++a) {
    const auto k = static_cast<Eigen::Index>(rng.index(n + 2));
    const auto rank = static_cast<Eigen::Index>(std::min<std::size_t>(rng.index(n + 1), static_cast<std::size_t>(k)));
    Matrix b = random_matrix(rng, k, rank) * random_matrix(rng, rank, static_cast<Eigen::Index>(n));
    s.push_back({std::move(b), module::random_fiber_norm(rng, static_cast<std::size_t>(k))});
  }
  return constructions::SublinearMap::seminorm_family(n, std::move(s));
}

// ---------------------------------------------------------------------------

Outcome riesz_laws() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  Rng rng(1);
  const auto triples = finite::random_triples(rng, 10000, 1, 8);
  const LawReport report = order::riesz_law_suite(triples);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  for (const auto& law : report.laws()) o.require(law.passed, "law " + law.id + " failed: " + law.counterexample.dump());
  o.require(report.laws().size() == 18, fmt::format("expected 18 laws, got {}", report.laws().size()));
  o.require(secs < 5.0, fmt::format("runtime {:.2f} s exceeds 5 s", secs));
  o.note(fmt::format("{}/{} laws on {} triples over 1-8 atoms in {:.2f} s", report.passed_count(), report.laws().size(),
                     triples.size(), secs));
  return o;
}

Outcome partitions() {
  Outcome o;
  using Partition = finite::Partition;
  Rng rng(2);
  for (int k = 0; k < 1000; ++k) {
    const std::size_t n = 1 + rng.index(8);
    std::vector<Fn> us;
    for (std::size_t i = 0, m = 1 + rng.index(6); i < m; ++i) us.push_back(finite::random_idempotent(rng, n));
    const auto out = order::disjointify(us);
    std::vector<Fn> values;
    for (const auto& d : out) values.push_back(d.value());
    o.require(order::pairwise_products_vanish(values) && order::check_disjoint(values), "disjointify output overlaps");
    std::vector<double> sup_in(n, 0.0), sup_out(n, 0.0);
    for (std::size_t i = 0; i < us.size(); ++i) {
      o.require(values[i] * us[i] == values[i], "disjointify part exceeds its input");
      for (std::size_t x = 0; x < n; ++x) {
        sup_in[x] = std::max(sup_in[x], us[i][x]);
        sup_out[x] = std::max(sup_out[x], values[i][x]);
      }
      o.require(sup_in == sup_out, "disjointify changes a running supremum");
    }
  }
  for (int k = 0; k < 1000; ++k) {
    const std::size_t n = 1 + rng.index(8);
    const Partition p = finite::random_partition(rng, n, 4), q = finite::random_partition(rng, n, 4);
    std::vector<order::RefinedIndex> idx;
    const Partition r = order::refine_partitions(p, q, &idx);
    o.require(idx.size() == r.size(), "refinement index count");
    for (std::size_t i = 0; i < r.size(); ++i) {
      o.require(r[i] == p[idx[i].left] * q[idx[i].right], "refined cell is not a product");
      if (i > 0) {
        o.require(idx[i - 1].left < idx[i].left || (idx[i - 1].left == idx[i].left && idx[i - 1].right < idx[i].right),
                  "refined cells are not in lexicographic order");
      }
    }
    for (std::size_t x = 0; x < n; ++x) {
      int hits = 0;
      for (std::size_t i = 0; i < r.size(); ++i) hits += r[i][x] == 1.0;
      o.require(hits == 1, "refinement does not partition the unit");
    }
  }
  const order::SimpleOp ops[] = {order::SimpleOp::Add, order::SimpleOp::Multiply, order::SimpleOp::Join,
                                 order::SimpleOp::Meet};
  for (int k = 0; k < 10000; ++k) {
    const std::size_t n = 1 + rng.index(8);
    const Partition pu = finite::random_partition(rng, n, 4), pv = finite::random_partition(rng, n, 4);
    std::vector<double> cu, cv;
    for (std::size_t i = 0; i < pu.size(); ++i) cu.push_back(rng.uniform(-8, 8));
    for (std::size_t i = 0; i < pv.size(); ++i) cv.push_back(rng.uniform(-8, 8));
    const order::SimpleElement<Fn> u(cu, pu), v(cv, pv);
    const auto op = ops[k % 4];
    const Fn got = order::simple_combine(u, v, op).value();
    // Pointwise oracle: the coefficient of the block containing each atom.
    for (std::size_t x = 0; x < n; ++x) {
      double a = 0.0, b = 0.0;
      for (std::size_t i = 0; i < pu.size(); ++i) a += pu[i][x] == 1.0 ? cu[i] : 0.0;
      for (std::size_t i = 0; i < pv.size(); ++i) b += pv[i][x] == 1.0 ? cv[i] : 0.0;
      double want = 0.0;
      switch (op) {
        case order::SimpleOp::Add: want = a + b; break;
        case order::SimpleOp::Multiply: want = a * b; break;
        case order::SimpleOp::Join: want = a > b ? a : b; break;
        case order::SimpleOp::Meet: want = a < b ? a : b; break;
      }
      o.require(got[x] == want, "simple_combine disagrees with pointwise evaluation");
    }
  }
  o.note("disjointify 1000, refine_partitions 1000, simple_combine 10000 (4 ops), exact");
  return o;
}

Outcome module_axioms() {
  Outcome o;
  Rng rng(3);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 1 + rng.index(6);
    const auto m = module::random_module(rng, n, 3);
    const ModuleElement v = module::random_element(rng, m), w = module::random_element(rng, m);
    const Fn u = finite::random_fn(rng, n);
    const Fn nv = module::pointwise_norm(v), nw = module::pointwise_norm(w), nvw = module::pointwise_norm(v + w);
    const Fn nuv = module::pointwise_norm(u * v);
    for (std::size_t i = 0; i < n; ++i) {
      o.require((nv[i] == 0.0) == v.at(i).isZero(0.0), "|v| = 0 exactly where v = 0");
      o.within(std::max(0.0, nvw[i] - nv[i] - nw[i]) / (1.0 + nv[i] + nw[i]), 1e-12, "triangle inequality");
      o.within(rel(nuv[i], std::abs(u[i]) * nv[i]), 1e-12, "|u v| = |u| |v|");
    }

    const finite::Partition p = finite::random_partition(rng, n, 4);
    std::vector<ModuleElement> elems, restricted;
    std::vector<Fn> scalars;
    for (std::size_t k = 0; k < p.size(); ++k) {
      elems.push_back(module::random_element(rng, m));
      scalars.push_back(finite::random_fn(rng, n));
      restricted.push_back(p[k] * v);
    }
    const ModuleElement g = module::glue(module::AdmissibleFamily(p, elems));
    for (std::size_t k = 0; k < p.size(); ++k) o.require(p[k] * g == p[k] * elems[k], "glued element restricts wrongly");
    o.require(module::glue(module::AdmissibleFamily(p, restricted)) == v, "glue of restrictions is not the element");

    // Closed form sup_n u_n v_n^+ - sup_n u_n v_n^-, evaluated atom by atom.
    const Fn gs = module::glue_scalar(p, scalars);
    for (std::size_t x = 0; x < n; ++x) {
      double pos = 0.0, neg = 0.0;
      for (std::size_t k = 0; k < p.size(); ++k) {
        pos = std::max(pos, p[k][x] * std::max(scalars[k][x], 0.0));
        neg = std::max(neg, p[k][x] * std::max(-scalars[k][x], 0.0));
      }
      o.within(std::abs(gs[x] - (pos - neg)), 1e-12, "scalar glueing closed form");
    }

    // Locality: an element vanishing on every block is zero, so the glued
    // element is unique; perturbing one atom is seen by its block.
    const ModuleElement diff = g - module::glue(module::AdmissibleFamily(p, elems));
    bool all_zero = true;
    for (std::size_t k = 0; k < p.size(); ++k) all_zero = all_zero && p[k] * diff == ModuleElement::zero(m);
    o.require(all_zero && diff == ModuleElement::zero(m), "glueing is not unique");
    const std::size_t atom = rng.index(n);
    if (m->dim(atom) > 0) {
      std::vector<Vector> bumped = g.vectors();
      bumped[atom](0) += 1.0;
      const ModuleElement h(m, bumped);
      bool seen = false;
      for (std::size_t k = 0; k < p.size(); ++k) seen = seen || !(p[k] * h == p[k] * elems[k]);
      o.require(seen, "locality misses a changed atom");
    }
  }
  o.note("1000 random modules: norm axioms, glue/restrict, scalar glueing, locality");
  return o;
}

// (sum_{y ~ x} w |f(y) - f(x)|^p)^(1/p).
Fn graph_gradient_oracle(const constructions::Graph& g, const Vector& f, double p) {
  std::vector<double> s(g.vertices.size(), 0.0);
  for (const auto& e : g.edges) {
    const double t = e.w * std::pow(std::abs(f(static_cast<Eigen::Index>(e.v)) - f(static_cast<Eigen::Index>(e.u))), p);
    s[e.u] += t;
    s[e.v] += t;
  }
  for (double& x : s) x = std::pow(x, 1.0 / p);
  return Fn(s);
}

constructions::Graph named_graph(std::size_t n, std::vector<constructions::Graph::Edge> edges) {
  constructions::Graph g;
  for (std::size_t i = 0; i < n; ++i) g.vertices.push_back("x" + std::to_string(i));
  g.edges = std::move(edges);
  return g;
}

Outcome generated_module() {
  Outcome o;
  Rng rng(4);
  std::vector<constructions::Graph::Edge> random_edges;
  for (std::size_t a = 0; a < 5; ++a) {
    for (std::size_t b = a + 1; b < 5; ++b) {
      if (b == a + 1 || rng.coin(0.4)) random_edges.push_back({a, b, rng.uniform(0.5, 2.0)});
    }
  }
  const std::vector<constructions::Graph> graphs{named_graph(2, {{0, 1, 1.0}}), named_graph(5, random_edges)};
  const std::vector<constructions::Graph> small{named_graph(2, {{0, 1, 1.0}}), named_graph(3, {{0, 1, 2.0}, {1, 2, 0.5}}),
                                                named_graph(3, {{0, 1, 1.0}, {1, 2, 1.5}, {0, 2, 0.7}})};
  std::size_t replays = 0;
  for (double p : {1.0, 2.0, 3.0}) {
    for (const auto& g : graphs) {
      const std::size_t n = g.vertices.size();
      const auto psi = constructions::SublinearMap::graph_gradient(g, p);
      const auto gen = constructions::generate_module(psi, structure_of(n, p));
      for (int k = 0; k < 1000; ++k) {
        const Vector f = random_vector(rng, static_cast<Eigen::Index>(n));
        const Fn got = module::pointwise_norm(gen(f)), want = graph_gradient_oracle(g, f, p);
        for (std::size_t x = 0; x < n; ++x) o.within(rel(got[x], want[x]), 1e-9, "|T f| = psi_p(f)");
      }
      for (std::size_t a = 0; a < n; ++a) {
        o.require(numerical_rank(gen.generator(a)) == gen.module()->dim(a), "generator images do not span a fiber");
      }
    }
    for (const auto& g : small) {
      const auto psi = constructions::SublinearMap::graph_gradient(g, p);
      const auto gen = constructions::generate_module(psi, structure_of(g.vertices.size(), p));
      const auto r = constructions::faithful_replay(psi, gen, rng, 200);
      o.require(r.ok(), "equivalence-class construction disagrees with the quotient construction");
      o.within(r.max_norm_error, 1e-9, "equivalence-class norms");
      ++replays;
    }
  }
  o.note(fmt::format("2-path and 5-vertex graph, p in {{1,2,3}}, 1000 f each; {} faithful replays on <= 3 atoms", replays));
  return o;
}

Outcome universal_property() {
  Outcome o;
  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t atoms = 1 + rng.index(3), n = 1 + rng.index(4);
    const auto gen = constructions::generate_module(random_seminorms(rng, atoms, n), structure_of(atoms));
    std::vector<FiberNorm> fibers;
    for (std::size_t a = 0; a < atoms; ++a) fibers.push_back(module::random_fiber_norm(rng, 1 + rng.index(3)));
    const auto target = module::make_module(structure_of(atoms), fibers);
    std::vector<Matrix> blocks, s;
    for (std::size_t a = 0; a < atoms; ++a) {
      blocks.push_back(random_matrix(rng, static_cast<Eigen::Index>(target->dim(a)),
                                     static_cast<Eigen::Index>(gen.module()->dim(a))));
      s.push_back(blocks.back() * gen.generator(a));
    }
    const HomElement truth(gen.module(), target, blocks);
    const Fn b = hom::hom_norm(truth) * Fn::constant(atoms, 1.0 + 1e-6);
    const auto phi = constructions::universal_factor(gen, target, s, b);

    // Uniqueness: generator images span every fiber, so any map agreeing on
    // them is phi; an independent construction from the same data agrees.
    for (std::size_t a = 0; a < atoms; ++a) {
      o.require(numerical_rank(gen.generator(a)) == gen.module()->dim(a), "generators do not span");
      const double scale = 1.0 + truth.at(a).norm();
      o.within((phi.at(a) - truth.at(a)).norm() / scale, 1e-9, "factor differs from the unique map");
    }
    std::vector<ModuleElement> gens, images;
    for (std::size_t i = 0; i < n; ++i) {
      const Vector e = Vector::Unit(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(i));
      gens.push_back(gen(e));
      std::vector<Vector> img;
      for (const auto& blk : s) img.push_back(blk * e);
      images.push_back(ModuleElement(target, img));
    }
    const auto other = hom::extend_from_generators(gens, images, b);
    o.require(hom::approx_equal(other, phi, 1e-9), "two factors agree on generators but differ");

    for (int k = 0; k < 50; ++k) {
      const Vector v = random_vector(rng, static_cast<Eigen::Index>(n));
      const ModuleElement image = phi(gen(v));
      for (std::size_t a = 0; a < atoms; ++a) {
        const Vector want = s[a] * v;
        o.within((image.at(a) - want).norm() / (1.0 + want.norm()), 1e-9, "factor residual");
      }
      const auto w = module::random_element(rng, gen.module());
      const Fn lhs = module::pointwise_norm(phi(w)), rhs = b * module::pointwise_norm(w);
      for (std::size_t i = 0; i < atoms; ++i) {
        o.within(std::max(0.0, lhs[i] - rhs[i]) / (1.0 + rhs[i]), 1e-9, "factor is not dominated");
      }
    }
  }
  o.note("20 dominated maps: factor exists, is dominated and unique");
  return o;
}

Outcome hom_norms() {
  Outcome o;
  Rng rng(6);
  double worst_sampled = 0.0;
  for (int trial = 0; trial < 12; ++trial) {
    const std::size_t ds = 1 + rng.index(3), dt = 1 + rng.index(3);
    const FiberNorm from = module::random_fiber_norm(rng, ds), to = module::random_fiber_norm(rng, dt);
    const Matrix t = random_matrix(rng, static_cast<Eigen::Index>(dt), static_cast<Eigen::Index>(ds));
    const auto src = module_of({from}), tgt = module_of({to});
    const double got = hom::hom_norm(HomElement(src, tgt, {t}))[0];
    const double sampled =
        oracle::sphere_sup([&](const Vector& x) { return to(t * x) / from(x); }, static_cast<int>(ds), 100000);
    worst_sampled = std::max(worst_sampled, std::abs(got - sampled) / sampled);
    o.require(std::abs(got - sampled) <= 1e-4 * sampled,
              fmt::format("hom norm {} vs sphere sampling {}", got, sampled));
  }
  for (double p : {1.0, 1.5, 2.0, 3.0, kInf}) {
    for (int k = 0; k < 5; ++k) {
      const std::size_t d = 1 + rng.index(3);
      const Matrix row = random_matrix(rng, 1, static_cast<Eigen::Index>(d));
      const double q = p == 1.0 ? kInf : std::isinf(p) ? 1.0 : p / (p - 1.0);
      const auto src = module_of({FiberNorm::lp(d, p)}), line = module_of({FiberNorm::lp(1, 2.0)});
      const double got = hom::hom_norm(HomElement(src, line, {row}))[0];
      o.within(rel(got, oracle::pnorm(row.row(0).transpose(), q)), 1e-10, "l^p to scalar closed form");
    }
  }
  for (int trial = 0; trial < 10; ++trial) {
    const auto m = module::random_module(rng, 5, 3);
    const auto part = finite::random_partition(rng, m->size(), 3);
    std::vector<HomElement> homs;
    for (std::size_t n = 0; n < part.size(); ++n) homs.push_back(random_hom(rng, m, m));
    Fn expected = Fn::zeros(m->size());
    for (std::size_t n = 0; n < part.size(); ++n) expected = expected + part[n] * hom::hom_norm(homs[n]);
    o.require(hom::hom_norm(hom::glue_homs(part, homs)) == expected, "norm of glued homs is not the glued norm");
  }
  o.note(fmt::format("12 sphere samplings (1e5 points, worst relative gap {:.2g}), 25 closed forms, 10 exact glueings",
                     worst_sampled));
  return o;
}

Outcome hahn_banach() {
  Outcome o;
  Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const auto m = module::random_module(rng, 3, 3);
    std::vector<Matrix> spans;
    for (std::size_t a = 0; a < m->size(); ++a) {
      const auto d = static_cast<Eigen::Index>(m->dim(a));
      spans.push_back(random_matrix(rng, d, static_cast<Eigen::Index>(rng.index(static_cast<std::size_t>(d) + 1))));
    }
    const module::Submodule n(m, spans);
    Fn g = Fn::zeros(m->size());
    std::vector<Vector> values;
    for (std::size_t a = 0; a < m->size(); ++a) {
      g[a] = rng.uniform(0.5, 2.0);
      // The restriction of a functional with dual norm below g.
      const Vector any = random_vector(rng, static_cast<Eigen::Index>(m->dim(a)));
      const double scale = m->dim(a) ? m->fiber(a).dual()(any) : 1.0;
      const Vector f = scale > 0.0 ? Vector(any * (g[a] * rng.uniform(0.0, 1.0) / scale)) : any;
      values.push_back(n.basis(a).transpose() * f);
    }
    const auto ext = hom::hahn_banach_extend(n, values, g);
    for (std::size_t a = 0; a < m->size(); ++a) {
      const Vector restricted = n.basis(a).transpose() * ext.at(a);
      for (Eigen::Index i = 0; i < restricted.size(); ++i) {
        o.within(rel(restricted(i), values[a](i)), 1e-9, "extension does not restrict to the functional");
      }
      for (int k = 0; k < 1000; ++k) {
        const Vector x = random_vector(rng, static_cast<Eigen::Index>(m->dim(a)));
        const double bound = g[a] * m->fiber(a)(x);
        o.within(std::max(0.0, ext.at(a).dot(x) - bound) / (1.0 + bound), 1e-8, "extension is not dominated");
      }
    }
  }
  std::vector<FiberNorm> fibers;
  for (double p : {1.0, 1.5, 2.0, kInf}) fibers.push_back(FiberNorm::lp(3, p));
  fibers.push_back(FiberNorm::gram(random_gram(rng, 3)));
  fibers.push_back(FiberNorm::gram(random_gram(rng, 2)));
  const auto m = module_of(fibers);
  for (int k = 0; k < 200; ++k) {
    const auto v = module::random_element(rng, m);
    const auto w = hom::norming_functional(v);
    const Fn pv = hom::pairing(w, v), nv = module::pointwise_norm(v), nw = module::pointwise_norm(w);
    const Fn chi = Fn::ones(m->size()) - module::zero_indicator(v).value();
    for (std::size_t i = 0; i < m->size(); ++i) {
      o.within(rel(pv[i], nv[i]), 1e-9, "<omega, v> = |v|");
      o.within(std::abs(nw[i] - chi[i]), 1e-9, "|omega| = indicator of v != 0");
    }
  }
  o.note("20 extensions with 1000 samples per fiber; norming functionals for l^1, l^1.5, l^2, l^inf and gram fibers");
  return o;
}

Outcome bidual() {
  Outcome o;
  Rng rng(8);
  for (int trial = 0; trial < 10; ++trial) {
    const auto m = module::random_module(rng, 3, 3);
    const auto emb = hom::bidual_embed(m);
    o.require(emb.reflexive, "bidual embedding is not onto");
    for (int k = 0; k < 1000; ++k) {
      const auto v = module::random_element(rng, m);
      const Fn a = module::pointwise_norm(emb.j(v)), b = module::pointwise_norm(v);
      for (std::size_t i = 0; i < a.size(); ++i) o.within(rel(a[i], b[i]), 1e-9, "|J v| = |v|");
    }
    // Surjectivity witness: every bidual element has a preimage.
    const auto xi = module::random_element(rng, emb.j.target());
    for (std::size_t i = 0; i < m->size(); ++i) {
      if (m->dim(i) == 0) continue;
      const auto ls = least_squares(emb.j.at(i), xi.at(i));
      o.within(ls.residual / (1.0 + xi.at(i).norm()), 1e-9, "bidual element without preimage");
    }
  }
  for (int trial = 0; trial < 20; ++trial) {
    o.within(hilbert::reflexivity_defect(random_hilbert(rng, 3, 4), rng, 200), 1e-10, "J differs from R* R");
  }
  o.note("10 random modules x 1000 elements; 20 Hilbert modules with J = R* R");
  return o;
}

// Grid brute force for the nearest point of a box, ball or their
// intersection in one fiber of dimension 1 or 2 under the gram H.
struct FiberProblem {
  Matrix h;
  Vector v;
  std::optional<std::pair<Vector, Vector>> box;
  std::optional<std::pair<Vector, double>> ball;
};

double h_norm(const Matrix& h, const Vector& x) { return std::sqrt(std::max(0.0, x.dot(h * x))); }

bool member(const FiberProblem& f, const Vector& x, double tol = 0.0) {
  if (f.box) {
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      if (x(i) < f.box->first(i) - tol || x(i) > f.box->second(i) + tol) return false;
    }
  }
  if (f.ball && h_norm(f.h, x - f.ball->first) > f.ball->second * (1.0 + tol) + tol) return false;
  return true;
}

struct GridResult {
  double best = kInf;
  std::vector<Vector> feasible;  // the first level, for first-order checks
};

GridResult grid_minimum(const FiberProblem& f) {
  const Eigen::Index d = f.v.size();
  Vector lo(d), hi(d);
  lo.setConstant(-kInf);
  hi.setConstant(kInf);
  if (f.box) lo = f.box->first, hi = f.box->second;
  if (f.ball) {
    const double reach = f.ball->second / std::sqrt(Eigen::SelfAdjointEigenSolver<Matrix>(f.h).eigenvalues().minCoeff());
    lo = lo.cwiseMax(Vector(f.ball->first.array() - reach));
    hi = hi.cwiseMin(Vector(f.ball->first.array() + reach));
  }
  const int per_side = d == 1 ? 10000 : 100;
  GridResult out;
  Vector best_x;
  for (int level = 0; level < 4; ++level) {
    const Vector step = (hi - lo) / (per_side - 1);
    std::vector<int> idx(static_cast<std::size_t>(d), 0);
    while (true) {
      Vector x(d);
      for (Eigen::Index i = 0; i < d; ++i) x(i) = lo(i) + step(i) * idx[static_cast<std::size_t>(i)];
      if (member(f, x)) {
        const double dist = h_norm(f.h, f.v - x);
        if (dist < out.best) out.best = dist, best_x = x;
        if (level == 0) out.feasible.push_back(x);
      }
      Eigen::Index i = 0;
      while (i < d && ++idx[static_cast<std::size_t>(i)] == per_side) idx[static_cast<std::size_t>(i++)] = 0;
      if (i == d) break;
    }
    if (best_x.size() == 0) break;
    lo = lo.cwiseMax(best_x - 2.0 * step);
    hi = hi.cwiseMin(best_x + 2.0 * step);
  }
  return out;
}

Outcome hilbert_toolbox() {
  Outcome o;
  Rng rng(9);
  for (int trial = 0; trial < 200; ++trial) {
    const auto m = random_hilbert(rng, 3, 4);
    const auto v = module::random_element(rng, m), w = module::random_element(rng, m);
    const Fn defect = hilbert::parallelogram_defect(v, w);
    const Fn scale = module::pointwise_norm(v) * module::pointwise_norm(v) + module::pointwise_norm(w) * module::pointwise_norm(w);
    for (std::size_t a = 0; a < m->size(); ++a) o.within(std::abs(defect[a]) / (1.0 + scale[a]), 1e-12, "parallelogram rule");
  }
  {
    const auto l1 = module_of({FiberNorm::lp(2, 1.0)});
    Vector e0(2), e1(2);
    e0 << 1, 0;
    e1 << 0, 1;
    const ModuleElement v(l1, {e0}), w(l1, {e1});
    const double lhs = std::pow(module::pointwise_norm(v + w)[0], 2) + std::pow(module::pointwise_norm(v - w)[0], 2);
    o.require(lhs == 8.0 && hilbert::parallelogram_defect(v, w)[0] == 4.0, "l^1 witness: expected 8 against 4");
  }

  // Projections against grid brute force, dims 1 and 2.
  for (int trial = 0; trial < 60; ++trial) {
    const Eigen::Index d = 1 + static_cast<Eigen::Index>(rng.index(2));
    FiberProblem f;
    f.h = rng.coin() ? Matrix(Matrix::Identity(d, d)) : random_gram(rng, d);
    f.v = 3.0 * random_vector(rng, d);
    const Vector c = random_vector(rng, d);
    hilbert::FiberSet set;
    switch (trial % 3) {
      case 0: {
        Vector width(d);
        for (Eigen::Index i = 0; i < d; ++i) width(i) = rng.uniform(0.2, 2.0);
        f.box = {{c, c + width}};
        set = hilbert::FiberSet::box(c, c + width);
        break;
      }
      case 1: {
        const double r = rng.uniform(0.2, 2.0);
        f.ball = {{c, r}};
        set = hilbert::FiberSet::ball(c, r);
        break;
      }
      default: {
        // Both parts contain c.
        const Vector lo = c - Vector::Constant(d, 0.5), hi = c + Vector::Constant(d, 0.7);
        const Vector centre = c + 0.3 * random_vector(rng, d);
        const double r = h_norm(f.h, centre - c) + rng.uniform(0.1, 0.8);
        f.box = {{lo, hi}};
        f.ball = {{centre, r}};
        set = hilbert::FiberSet::intersection({hilbert::FiberSet::box(lo, hi), hilbert::FiberSet::ball(centre, r)});
      }
    }
    const auto m = module_of({FiberNorm::gram(f.h)});
    const ModuleElement p = hilbert::project_convex(ModuleElement(m, {f.v}), hilbert::ConvexSet{{set}});
    const Vector px = p.at(0);
    o.require(member(f, px, 1e-9), "projection lies outside the set");
    const double dist = h_norm(f.h, f.v - px);
    const GridResult grid = grid_minimum(f);
    o.require(!grid.feasible.empty(), "grid misses the set");
    o.within(std::max(0.0, dist - grid.best), 1e-3, "projection farther than the grid minimum");
    o.require(dist <= grid.best + 1e-12 * (1.0 + dist), "a grid point beats the projection");
    const Vector r = f.v - px;
    for (const Vector& x : grid.feasible) {
      const double ip = r.dot(f.h * (x - px));
      o.within(std::max(0.0, ip) / (1.0 + h_norm(f.h, r) * h_norm(f.h, x - px)), 1e-9, "first-order condition");
    }
  }

  for (int trial = 0; trial < 200; ++trial) {
    const auto m = random_hilbert(rng, 3, 4);
    std::vector<Matrix> spans;
    for (std::size_t a = 0; a < m->size(); ++a) {
      const auto d = static_cast<Eigen::Index>(m->dim(a));
      spans.push_back(random_matrix(rng, d, static_cast<Eigen::Index>(rng.index(m->dim(a) + 1))));
    }
    const module::Submodule n(m, spans);
    const auto perp = hilbert::orthogonal_complement(n);
    const auto v = module::random_element(rng, m);
    const auto pn = hilbert::project_submodule(v, n), pp = hilbert::project_submodule(v, perp);
    const Fn nv = module::pointwise_norm(v), a2 = module::pointwise_norm(pn), b2 = module::pointwise_norm(pp);
    for (std::size_t a = 0; a < m->size(); ++a) {
      o.within(rel(nv[a] * nv[a], a2[a] * a2[a] + b2[a] * b2[a]), 1e-9, "Pythagoras");
    }
    o.require(module::approx_equal(pn + pp, v, 1e-9), "projections do not add up");
  }

  for (int trial = 0; trial < 1000; ++trial) {
    const auto m = random_hilbert(rng, 2, 4);
    const auto v = module::random_element(rng, m), w = module::random_element(rng, m);
    const auto rw = hilbert::riesz_map(w);
    const Fn pair = hom::pairing(rw, v), dot = hilbert::pointwise_inner(v, w);
    const Fn nr = module::pointwise_norm(rw), nw = module::pointwise_norm(w);
    for (std::size_t a = 0; a < m->size(); ++a) {
      const double scale = 1.0 + nw[a] * nw[a] + std::abs(dot[a]);
      o.within(std::abs(pair[a] - dot[a]) / scale, 1e-10, "<R w, v> = v . w");
      o.within(rel(nr[a], nw[a]), 1e-10, "Riesz map isometry");
    }
    const auto back = hilbert::riesz_inverse(rw, m);
    for (std::size_t a = 0; a < m->size(); ++a) {
      o.within((back.at(a) - w.at(a)).norm() / (1.0 + w.at(a).norm()), 1e-10, "Riesz map inverse");
    }
  }
  o.note("parallelogram on 200 modules and the l^1 witness; 60 projections against a 1e4-point grid; "
         "200 Pythagoras checks; 1000 Riesz maps");
  return o;
}

hom::StructureHom precomposition(const FiniteFStructure& s, std::size_t k, Rng& rng, std::vector<std::size_t>& map) {
  map.clear();
  for (std::size_t t = 0; t < k; ++t) map.push_back(rng.index(s.size()));
  const auto target = FiniteFStructure(FiniteMeasureSpace::uniform(k), SpaceType::linf(), s.v());
  return hom::StructureHom::precomposition(s, target, map);
}

Outcome pushforward() {
  Outcome o;
  Rng rng(10);
  for (int trial = 0; trial < 10; ++trial) {
    const auto m = module::random_module(rng, 3, 3);
    std::vector<std::size_t> map1, map2;
    const auto phi1 = precomposition(m->structure(), 1 + rng.index(4), rng, map1);
    const auto phi2 = precomposition(phi1.target(), 1 + rng.index(4), rng, map2);
    std::vector<std::size_t> map21;
    for (std::size_t r : map2) map21.push_back(map1[r]);
    const auto phi21 = hom::StructureHom::precomposition(m->structure(), phi2.target(), map21);

    const auto pf1 = constructions::pushforward_module(phi1, m);
    for (int k = 0; k < 100; ++k) {
      const auto v = module::random_element(rng, m);
      o.require(module::pointwise_norm(pf1.map(v)) == phi1(module::pointwise_norm(v)), "|phi_* v| != phi(|v|)");
    }
    // Identity and composition.
    const auto pid = constructions::pushforward_module(hom::StructureHom::identity(m->structure()), m);
    o.require(*pid.module == *m, "pushforward along the identity changes the module");
    for (std::size_t a = 0; a < m->size(); ++a) {
      o.require(is_exact_identity(pid.map.at(a)) || m->dim(a) == 0, "pushforward along the identity is not the identity");
    }
    const auto pf2 = constructions::pushforward_module(phi2, pf1.module);
    const auto pf21 = constructions::pushforward_module(phi21, m);
    o.require(*pf21.module == *pf2.module, "pushforward of a composite differs as a module");
    const auto composed = hom::compose(pf2.map, pf1.map);
    o.require(composed.matrices() == pf21.map.matrices() && composed.source_atoms() == pf21.map.source_atoms(),
              "pushforward of a composite differs as a map");
    const auto b = module::random_module(rng, 3, 3);
    const auto bm = module::make_module(m->structure(), b->fibers());
    const auto t = random_hom(rng, m, bm), u = random_hom(rng, bm, bm);
    const auto lhs = constructions::pushforward_hom(phi1, hom::compose(u, t));
    const auto rhs = hom::compose(constructions::pushforward_hom(phi1, u), constructions::pushforward_hom(phi1, t));
    o.require(lhs.matrices() == rhs.matrices(), "pushforward of homs is not functorial");
    o.require(constructions::pushforward_hom(phi1, HomElement::identity(m)).matrices() ==
                  HomElement::identity(pf1.module).matrices(),
              "pushforward of the identity hom");

    // Pullback along a point map is the pushforward under f -> f o map.
    const auto over = FiniteFStructure(FiniteMeasureSpace::uniform(map1.size()), SpaceType::linf(), m->structure().v());
    const auto pb = constructions::pullback_module(map1, m, over);
    const auto v = module::random_element(rng, m);
    const Fn nv = module::pointwise_norm(v), npb = module::pointwise_norm(pb.map(v));
    for (std::size_t x = 0; x < map1.size(); ++x) o.require(npb[x] == nv[map1[x]], "pullback norm is not |v| o map");
  }
  for (int trial = 0; trial < 5; ++trial) {
    const auto m = module::random_module(rng, 2, 3);
    std::vector<std::size_t> map;
    const auto phi = precomposition(m->structure(), 3, rng, map);
    const auto embed = constructions::dual_embed(phi, m);
    const auto pushed_dual = constructions::pushforward_module(phi, hom::dual_module(m));
    const auto pushed = constructions::pushforward_module(phi, m);
    for (int k = 0; k < 1000; ++k) {
      const auto omega = module::random_element(rng, hom::dual_module(m));
      const auto eta = pushed_dual.map(omega);
      const auto image = embed(eta);
      const Fn n1 = module::pointwise_norm(image), n2 = module::pointwise_norm(eta);
      const auto v = module::random_element(rng, m);
      const Fn lhs = hom::pairing(image, pushed.map(v)), rhs = phi(hom::pairing(omega, v));
      for (std::size_t t = 0; t < 3; ++t) {
        o.within(rel(n1[t], n2[t]), 1e-9, "dual embedding isometry");
        o.within(rel(lhs[t], rhs[t]), 1e-9, "dual embedding pairing");
      }
    }
  }
  o.note("10 precompositions: norms, functor laws and pullbacks exact; 5 dual embeddings x 1000 functionals");
  return o;
}

Outcome dimensional_decomposition() {
  Outcome o;
  Rng rng(11);
  std::size_t idempotents = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 1 + rng.index(10);
    const auto m = module::random_module(rng, n, 3);
    const auto parts = module::dimensional_decomposition(*m);
    Fn total = Fn::zeros(n);
    for (const auto& part : parts) {
      total = total + part.part;
      const auto basis = module::local_basis(m, part.part);
      o.require(basis.size() == part.dim, "local basis of the wrong size");
      o.require(module::independence_check(basis, part.part), "local basis is dependent");
      o.require(module::Submodule::spanned_by(m, basis).contains(part.part * module::random_element(rng, m)),
                "local basis does not generate");
    }
    o.require(total == Fn::ones(n), "parts do not partition the unit");
    for (std::size_t i = 0; i < parts.size(); ++i) {
      for (std::size_t j = i + 1; j < parts.size(); ++j) {
        o.require(parts[i].part * parts[j].part == Fn::zeros(n), "parts overlap");
      }
    }
    // Brute force over all idempotents below a part: k random vectors give
    // a basis of u.M exactly when every fiber under u has rank k = dim.
    for (const auto& part : parts) {
      for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
        bool below = true;
        for (std::size_t i = 0; i < n; ++i) below = below && (!((mask >> i) & 1) || part.part[i] == 1.0);
        if (!below) continue;
        ++idempotents;
        for (std::size_t k = 0; k <= 4; ++k) {
          bool exists = true;
          for (std::size_t i = 0; i < n; ++i) {
            if (!((mask >> i) & 1)) continue;
            const auto d = static_cast<Eigen::Index>(m->dim(i));
            const Matrix family = random_matrix(rng, d, static_cast<Eigen::Index>(k));
            const auto r = family.size() == 0 ? std::size_t{0} : static_cast<std::size_t>(Eigen::FullPivLU<Matrix>(family).rank());
            exists = exists && r == k && r == m->dim(i);
          }
          o.require(exists == (k == part.dim), "an idempotent below a part carries a basis of another size");
        }
      }
    }
  }
  o.note(fmt::format("60 modules on <= 10 atoms; {} idempotents brute-forced", idempotents));
  return o;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome cli_determinism() {
  Outcome o;
  const std::string golden = RIESZMOD_GOLDEN_DIR;
  const std::string inputs = golden + "/inputs/";
  auto run = [](const std::vector<std::string>& args, int& code) {
    std::ostringstream out;
    code = cli::run(args, out);
    return out.str();
  };
  const std::vector<std::pair<std::vector<std::string>, std::string>> documented{
      {{"laws", "--structure", inputs + "structure.json", "--samples", "10000", "--seed", "7"}, "laws.json"},
      {{"cotangent", "--graph", inputs + "path2.json", "--p", "2", "--fn", "[0,1]"}, "cotangent.json"},
      {{"decompose", "--module", inputs + "module_221.json"}, "decompose.json"},
  };
  for (const auto& [args, file] : documented) {
    int code = 0;
    const std::string text = run(args, code);
    o.require(code == 0, args[0] + " exits nonzero");
    o.require(text == slurp(golden + "/" + file), args[0] + " differs from its golden file");
  }
  const std::vector<std::vector<std::string>> seeded{
      {"laws", "--structure", inputs + "structure.json", "--seed", "11"},
      {"dual", "--module", inputs + "module_221.json", "--element", inputs + "element_221.json", "--seed", "5"},
      {"project", "--module", inputs + "module_221.json", "--element", inputs + "element_221.json", "--set",
       inputs + "box_set.json", "--seed", "9"},
      {"hahn-banach", "--module", inputs + "module_221.json", "--functional", inputs + "functional.json", "--seed", "2"},
      {"pushforward", "--module", inputs + "module_221.json", "--map", "[0,0,2,1]", "--seed", "1"},
      {"cotangent", "--graph", inputs + "path2.json", "--fn", "[0,1]", "--faithful", "--seed", "3"},
      {"stone", "--generators", "[[1,0,1,0],[1,1,0,0]]", "--seed", "4"},
      {"decompose", "--module", inputs + "module_221.json", "--seed", "6"},
  };
  for (const auto& args : seeded) {
    int a = 0, b = 0;
    const std::string first = run(args, a), second = run(args, b);
    o.require(a == 0 && b == 0, args[0] + " exits nonzero");
    o.require(first == second, args[0] + " is not byte-identical across runs");
  }
  o.note(fmt::format("3 golden files; {} commands byte-identical across two runs", seeded.size()));
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"riesz and f-algebra laws", riesz_laws},
      {"partition machinery", partitions},
      {"normed-module axioms and glueing", module_axioms},
      {"generated module", generated_module},
      {"universal property", universal_property},
      {"hom norms", hom_norms},
      {"hahn-banach", hahn_banach},
      {"bidual embedding", bidual},
      {"hilbert toolbox", hilbert_toolbox},
      {"pushforward and pullback", pushforward},
      {"dimensional decomposition", dimensional_decomposition},
      {"cli determinism", cli_determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto& [name, check] = criteria[i];
    Outcome o;
    try {
      o = check();
    } catch (const Error& e) {
      o.require(false, fmt::format("threw {}: {}", to_string(e.code()), e.what()));
    } catch (const std::exception& e) {
      o.require(false, fmt::format("threw: {}", e.what()));
    }
    failed += !o.ok();
    std::cout << fmt::format("[{}] {:>2} {}: {}", o.ok() ? "PASS" : "FAIL", i + 1, name, o.detail()) << std::endl;
  }
  std::cout << fmt::format("{}/{} criteria passed", criteria.size() - static_cast<std::size_t>(failed), criteria.size())
            << std::endl;
  return failed == 0 ? 0 : 1;
}
