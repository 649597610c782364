#include "rieszmod/hilbert/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "rieszmod/error.hpp"
#include "rieszmod/module/sampling.hpp"

namespace rieszmod::hilbert {

namespace {

constexpr double kDykstraTolerance = 1e-10;
constexpr std::size_t kDykstraSweeps = 10000;
constexpr std::size_t kBoxSweeps = 100000;

Matrix gram_of(const FiberModule& m, std::size_t a) {
  const auto g = m.fiber(a).euclidean_gram();
  if (!g) throw Error(ErrorCode::NotHilbert, "fiber norm is not an inner-product norm", "/fibers/" + std::to_string(a));
  return *g;
}

std::vector<Matrix> grams_of(const FiberModule& m) {
  std::vector<Matrix> out;
  for (std::size_t a = 0; a < m.size(); ++a) out.push_back(gram_of(m, a));
  return out;
}

double h_norm(const Matrix& h, const Vector& x) { return std::sqrt(std::max(0.0, x.dot(h * x))); }

Matrix subspace_projector(const Matrix& h, const Matrix& basis) {
  const auto d = h.rows();
  if (basis.cols() == 0) return Matrix::Zero(d, d);
  const Matrix b = select_columns(basis, pivot_columns(basis));
  if (b.cols() == 0) return Matrix::Zero(d, d);
  const Matrix hb = h * b;
  return b * (b.transpose() * hb).ldlt().solve(hb.transpose());
}

void check_shape(const FiberSet& s, Eigen::Index d, const std::string& path) {
  switch (s.kind) {
    case FiberSet::Kind::Subspace:
      if (s.basis.rows() != d) throw Error(ErrorCode::DimensionMismatch, "basis does not fit the fiber", path);
      break;
    case FiberSet::Kind::Box:
      if (s.lo.size() != d || s.hi.size() != d) {
        throw Error(ErrorCode::DimensionMismatch, "box bounds do not fit the fiber", path);
      }
      for (Eigen::Index i = 0; i < d; ++i) {
        if (!(s.lo(i) <= s.hi(i))) throw Error(ErrorCode::EmptySet, "box has lo > hi", path);
      }
      break;
    case FiberSet::Kind::Ball:
      if (s.center.size() != d) throw Error(ErrorCode::DimensionMismatch, "ball center does not fit the fiber", path);
      if (!(s.radius >= 0.0)) throw Error(ErrorCode::EmptySet, "ball has negative radius", path);
      break;
    case FiberSet::Kind::Intersection:
      for (std::size_t k = 0; k < s.parts.size(); ++k) check_shape(s.parts[k], d, path + "/parts/" + std::to_string(k));
      break;
  }
}

bool fiber_contains(const FiberSet& s, const Matrix& h, const Vector& x, double tol) {
  const double scale = 1.0 + h_norm(h, x);
  switch (s.kind) {
    case FiberSet::Kind::Subspace:
      return h_norm(h, x - subspace_projector(h, s.basis) * x) <= tol * scale;
    case FiberSet::Kind::Box:
      for (Eigen::Index i = 0; i < x.size(); ++i) {
        if (x(i) < s.lo(i) - tol * scale || x(i) > s.hi(i) + tol * scale) return false;
      }
      return true;
    case FiberSet::Kind::Ball:
      return h_norm(h, x - s.center) <= s.radius + tol * scale;
    case FiberSet::Kind::Intersection:
      return std::all_of(s.parts.begin(), s.parts.end(),
                         [&](const FiberSet& p) { return fiber_contains(p, h, x, tol); });
  }
  return false;
}

Vector project_box(const FiberSet& s, const Matrix& h, const Vector& v) {
  Vector x = v.cwiseMax(s.lo).cwiseMin(s.hi);
  const Eigen::Index d = v.size();
  // Exact coordinate minimization of (x - v)^T H (x - v) over the box.
  for (std::size_t sweep = 0; sweep < kBoxSweeps; ++sweep) {
    double change = 0.0;
    for (Eigen::Index i = 0; i < d; ++i) {
      const double off = h.row(i).dot(x - v) - h(i, i) * (x(i) - v(i));
      const double next = std::clamp(v(i) - off / h(i, i), s.lo(i), s.hi(i));
      change = std::max(change, std::abs(next - x(i)));
      x(i) = next;
    }
    if (change <= 1e-16 * (1.0 + x.cwiseAbs().maxCoeff())) break;
  }
  return x;
}

Vector project_fiber(const FiberSet& s, const Matrix& h, const Vector& v, const std::string& path);

Vector dykstra(const std::vector<FiberSet>& parts, const Matrix& h, const Vector& v, const std::string& path) {
  if (parts.empty()) return v;
  if (parts.size() == 1) return project_fiber(parts.front(), h, v, path + "/parts/0");
  const double scale = 1.0 + h_norm(h, v);
  Vector x = v;
  std::vector<Vector> increments(parts.size(), Vector::Zero(v.size()));
  std::vector<Vector> outputs(parts.size(), v);
  for (std::size_t sweep = 0; sweep < kDykstraSweeps; ++sweep) {
    double change = 0.0;
    for (std::size_t k = 0; k < parts.size(); ++k) {
      const Vector shifted = x + increments[k];
      const Vector y = project_fiber(parts[k], h, shifted, path + "/parts/" + std::to_string(k));
      const Vector step = shifted - y;
      change = std::max({change, h_norm(h, y - outputs[k]), h_norm(h, step - increments[k])});
      increments[k] = step;
      outputs[k] = y;
      x = y;
    }
    if (change <= kDykstraTolerance * scale) {
      bool feasible = true;
      for (const auto& p : parts) feasible = feasible && fiber_contains(p, h, x, 1e-8);
      if (feasible) return x;
    }
  }
  throw Error(ErrorCode::EmptySet, "intersection appears to be empty", path);
}

Vector project_fiber(const FiberSet& s, const Matrix& h, const Vector& v, const std::string& path) {
  switch (s.kind) {
    case FiberSet::Kind::Subspace:
      return subspace_projector(h, s.basis) * v;
    case FiberSet::Kind::Box:
      if (h.isDiagonal(0.0)) return v.cwiseMax(s.lo).cwiseMin(s.hi);
      return project_box(s, h, v);
    case FiberSet::Kind::Ball: {
      const Vector off = v - s.center;
      const double r = h_norm(h, off);
      if (r <= s.radius) return v;
      return s.center + (s.radius / r) * off;
    }
    case FiberSet::Kind::Intersection:
      return dykstra(s.parts, h, v, path);
  }
  return v;
}

void check_set(const FiberModule& m, const ConvexSet& c) {
  if (c.fibers.size() != m.size()) throw Error(ErrorCode::DimensionMismatch, "one fiber set per atom", "/fibers");
  for (std::size_t a = 0; a < m.size(); ++a) {
    check_shape(c.fibers[a], static_cast<Eigen::Index>(m.dim(a)), "/fibers/" + std::to_string(a));
  }
}

bool is_dual_of(const FiberModule& dual, const FiberModule& m) {
  if (dual.size() != m.size()) return false;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (!(dual.fiber(i) == m.fiber(i).dual())) return false;
  }
  return true;
}

}  // namespace

FiberSet FiberSet::subspace(Matrix basis) {
  FiberSet s;
  s.kind = Kind::Subspace;
  s.basis = std::move(basis);
  return s;
}

FiberSet FiberSet::box(Vector lo, Vector hi) {
  FiberSet s;
  s.kind = Kind::Box;
  s.lo = std::move(lo);
  s.hi = std::move(hi);
  return s;
}

FiberSet FiberSet::ball(Vector center, double radius) {
  FiberSet s;
  s.kind = Kind::Ball;
  s.center = std::move(center);
  s.radius = radius;
  return s;
}

FiberSet FiberSet::intersection(std::vector<FiberSet> parts) {
  FiberSet s;
  s.kind = Kind::Intersection;
  s.parts = std::move(parts);
  return s;
}

bool is_hilbert(const FiberModule& m) {
  return std::all_of(m.fibers().begin(), m.fibers().end(),
                     [](const FiberNorm& f) { return f.euclidean_gram().has_value(); });
}

Fn parallelogram_defect(const ModuleElement& v, const ModuleElement& w) {
  const Fn nv = module::pointwise_norm(v), nw = module::pointwise_norm(w);
  const Fn sum = module::pointwise_norm(v + w), diff = module::pointwise_norm(v - w);
  Fn out = Fn::zeros(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[i] = sum[i] * sum[i] + diff[i] * diff[i] - 2.0 * nv[i] * nv[i] - 2.0 * nw[i] * nw[i];
  }
  return out;
}

double compatibility_gap(const ModulePtr& m, Rng& rng, std::size_t samples) {
  const auto& structure = m->structure();
  const auto z = finite::DualSystem::standard(structure).z_structure();
  double gap = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < samples; ++k) {
    const Fn norms = module::pointwise_norm(module::random_element(rng, m));
    Fn squares = Fn::zeros(norms.size());
    for (std::size_t i = 0; i < norms.size(); ++i) squares[i] = norms[i] * norms[i];
    const double lhs = std::pow(structure.d_v0(norms), 2);
    const double rhs = z.d_v0(squares);
    gap = std::max(gap, (lhs - rhs) / (1.0 + rhs));
  }
  return samples == 0 ? 0.0 : gap;
}

HilbertModule::HilbertModule(ModulePtr m, std::uint64_t seed) : module_(std::move(m)), grams_(grams_of(*module_)) {
  Rng rng(seed);
  if (compatibility_gap(module_, rng, 200) > 1e-9) {
    throw Error(ErrorCode::HilbertCompatibility, "d(v, 0)^2 exceeds d_Z(|v|^2, 0) on a sample");
  }
}

Fn pointwise_inner(const ModuleElement& v, const ModuleElement& w) {
  module::require_same_module(v, w);
  Fn out = Fn::zeros(v.size());
  for (std::size_t a = 0; a < v.size(); ++a) out[a] = v.at(a).dot(gram_of(v.module(), a) * w.at(a));
  return out;
}

Fn cauchy_schwarz_slack(const ModuleElement& v, const ModuleElement& w) {
  const Fn dot = pointwise_inner(v, w);
  const Fn nv = module::pointwise_norm(v), nw = module::pointwise_norm(w);
  Fn out = Fn::zeros(v.size());
  for (std::size_t a = 0; a < v.size(); ++a) out[a] = nv[a] * nw[a] - std::abs(dot[a]);
  return out;
}

ModuleElement project_convex(const ModuleElement& v, const ConvexSet& c) {
  const auto grams = grams_of(v.module());
  check_set(v.module(), c);
  std::vector<Vector> out;
  for (std::size_t a = 0; a < v.size(); ++a) {
    out.push_back(project_fiber(c.fibers[a], grams[a], v.at(a), "/fibers/" + std::to_string(a)));
  }
  return ModuleElement(v.module_ptr(), std::move(out));
}

Fn distance_to_set(const ModuleElement& v, const ConvexSet& c) {
  return module::pointwise_norm(v - project_convex(v, c));
}

bool contains(const ConvexSet& c, const ModuleElement& v, double tol) {
  const auto grams = grams_of(v.module());
  check_set(v.module(), c);
  for (std::size_t a = 0; a < v.size(); ++a) {
    if (!fiber_contains(c.fibers[a], grams[a], v.at(a), tol)) return false;
  }
  return true;
}

ModuleElement project_submodule(const ModuleElement& v, const Submodule& n) {
  if (!module::same_module(v.module_ptr(), n.module_ptr())) {
    throw Error(ErrorCode::ModuleMismatch, "submodule lives in another module");
  }
  std::vector<Vector> out;
  for (std::size_t a = 0; a < v.size(); ++a) out.push_back(subspace_projector(gram_of(v.module(), a), n.basis(a)) * v.at(a));
  return ModuleElement(v.module_ptr(), std::move(out));
}

Submodule orthogonal_complement(const Submodule& n) {
  const FiberModule& m = *n.module_ptr();
  std::vector<Matrix> spans;
  for (std::size_t a = 0; a < m.size(); ++a) {
    const Matrix h = gram_of(m, a);
    const auto d = static_cast<Eigen::Index>(m.dim(a));
    const Matrix& b = n.basis(a);
    spans.push_back(b.cols() == 0 ? Matrix(Matrix::Identity(d, d)) : null_space(b.transpose() * h));
    if (spans.back().rows() != d) spans.back() = Matrix::Zero(d, 0);
  }
  return Submodule(n.module_ptr(), spans);
}

ModuleElement riesz_map(const ModuleElement& w) {
  std::vector<Vector> out;
  for (std::size_t a = 0; a < w.size(); ++a) out.push_back(gram_of(w.module(), a) * w.at(a));
  return ModuleElement(hom::dual_module(w.module_ptr()), std::move(out));
}

ModuleElement riesz_inverse(const ModuleElement& eta, const ModulePtr& m) {
  if (!is_dual_of(eta.module(), *m)) throw Error(ErrorCode::ModuleMismatch, "functional does not act on this module");
  std::vector<Vector> out;
  for (std::size_t a = 0; a < m->size(); ++a) out.push_back(gram_of(*m, a).ldlt().solve(eta.at(a)));
  return ModuleElement(m, std::move(out));
}

double reflexivity_defect(const ModulePtr& m, Rng& rng, std::size_t samples) {
  const auto j = hom::bidual_embed(m).j;
  double worst = 0.0;
  for (std::size_t k = 0; k < samples; ++k) {
    const ModuleElement v = module::random_element(rng, m);
    const ModuleElement twice = riesz_map(riesz_map(v));
    const ModuleElement embedded = j(v);
    for (std::size_t a = 0; a < v.size(); ++a) {
      if (v.at(a).size() == 0) continue;
      const double scale = 1.0 + v.at(a).cwiseAbs().maxCoeff();
      worst = std::max(worst, (twice.at(a) - embedded.at(a)).cwiseAbs().maxCoeff() / scale);
    }
  }
  return worst;
}

bool hilbert_reflexivity_check(const ModulePtr& m, Rng& rng, std::size_t samples) {
  return reflexivity_defect(m, rng, samples) <= 1e-10;
}

}  // namespace rieszmod::hilbert
