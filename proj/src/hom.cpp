#include "rieszmod/hom/hom.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "rieszmod/error.hpp"
#include "rieszmod/module/convex_min.hpp"
#include "rieszmod/rng.hpp"

namespace rieszmod::hom {

namespace {

constexpr int kRestarts = 32;
constexpr int kAscentSteps = 500;
constexpr std::size_t kMaxPolarRows = 20;

bool is_polyhedral(const FiberNorm& n) {
  return n.base() == FiberNorm::Base::Lp && (n.p() == 1.0 || std::isinf(n.p()));
}

double conjugate(double p) {
  if (p == 1.0) return std::numeric_limits<double>::infinity();
  if (std::isinf(p)) return 1.0;
  return p / (p - 1.0);
}

// Local maximum of to(Tx) / from(x) by gradient ascent with line searches;
// the ratio is scale invariant, so iterates are renormalised.
double ascend(const Matrix& t, const FiberNorm& from, const FiberNorm& to, Vector x) {
  auto ratio = [&](const Vector& y) {
    const double den = from(y);
    return den > 0.0 ? to(t * y) / den : 0.0;
  };
  x.normalize();
  double value = ratio(x);
  for (int step = 0; step < kAscentSteps; ++step) {
    Vector grad(x.size());
    const double h = 1e-6;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      Vector xp = x, xm = x;
      xp(i) += h;
      xm(i) -= h;
      grad(i) = (ratio(xp) - ratio(xm)) / (2.0 * h);
    }
    grad -= grad.dot(x) * x;  // tangent to the sphere
    if (!(grad.norm() > 0.0)) break;
    const module::LineMin lm = module::golden_line_search(
        [&](double s) {
          Vector y = x + s * grad;
          return -ratio(y);
        },
        1e-2 / grad.norm());
    const double next = -lm.value;
    if (!lm.bounded || !(next > value * (1.0 + 1e-15))) break;
    x = (x + lm.s * grad).normalized();
    value = ratio(x);
  }
  return value;
}

double smooth_operator_norm(const Matrix& t, const FiberNorm& from, const FiberNorm& to) {
  const auto d = t.cols();
  std::vector<Vector> starts;
  for (Eigen::Index i = 0; i < d; ++i) starts.push_back(Vector::Unit(d, i));
  if (d <= 5) {
    for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
      Vector x(d);
      for (Eigen::Index i = 0; i < d; ++i) x(i) = (mask >> i) & 1 ? -1.0 : 1.0;
      starts.push_back(x);
    }
  }
  Rng rng(0x6f70ULL + static_cast<std::uint64_t>(d) * 131 + static_cast<std::uint64_t>(t.rows()));
  while (static_cast<int>(starts.size()) < kRestarts) {
    Vector x(d);
    for (Eigen::Index i = 0; i < d; ++i) x(i) = rng.normal();
    if (x.norm() > 0.0) starts.push_back(x);
  }
  // Cheap screening, then ascent from the most promising starts.
  std::vector<std::pair<double, std::size_t>> ranked;
  for (std::size_t i = 0; i < starts.size(); ++i) {
    ranked.emplace_back(-to(t * starts[i]) / from(starts[i]), i);
  }
  std::sort(ranked.begin(), ranked.end());
  double best = 0.0;
  for (std::size_t r = 0; r < ranked.size() && static_cast<int>(r) < kRestarts; ++r) {
    best = std::max(best, ascend(t, from, to, starts[ranked[r].second]));
  }
  return best;
}

}  // namespace

std::vector<Vector> unit_ball_vertices(const FiberNorm& n) {
  if (!is_polyhedral(n) || n.dim() == 0) return {};
  if (!n.is_polar()) {
    const module::LpForm f = n.form();
    return module::lp_preimage_ball_vertices(f.c, f.p);
  }
  // Polar balls are images A^T B of the conjugate ball B.
  const Matrix& a = *n.map();
  std::vector<Vector> out;
  if (std::isinf(n.p())) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      out.push_back(a.row(i).transpose());
      out.push_back(-a.row(i).transpose());
    }
    return out;
  }
  const auto k = static_cast<std::size_t>(a.rows());
  if (k > kMaxPolarRows) throw Error(ErrorCode::InvalidInput, "polar norm has too many rows to enumerate");
  for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
    Vector s(a.rows());
    for (std::size_t i = 0; i < k; ++i) s(static_cast<Eigen::Index>(i)) = (mask >> i) & 1 ? -1.0 : 1.0;
    out.push_back(a.transpose() * s);
  }
  return out;
}

double operator_norm(const Matrix& t, const FiberNorm& from, const FiberNorm& to) {
  if (static_cast<std::size_t>(t.cols()) != from.dim() || static_cast<std::size_t>(t.rows()) != to.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "matrix does not fit the fibers");
  }
  if (t.size() == 0 || t.isZero(0.0)) return 0.0;
  if (to.dim() == 1) return to(Vector::Ones(1)) * from.dual()(t.row(0).transpose());
  if (from.is_polar()) {
    // The unit ball is A^T (conjugate l^q ball).
    const Matrix& a = *from.map();
    return operator_norm(t * a.transpose(), FiberNorm::lp(static_cast<std::size_t>(a.rows()), conjugate(from.p())),
                         to);
  }
  const auto hs = from.euclidean_gram(), ht = to.euclidean_gram();
  if (hs && ht) {
    const Matrix lhs = t.transpose() * *ht * t;
    Eigen::GeneralizedSelfAdjointEigenSolver<Matrix> eig(0.5 * (lhs + lhs.transpose()), *hs,
                                                         Eigen::EigenvaluesOnly);
    return std::sqrt(std::max(0.0, eig.eigenvalues().maxCoeff()));
  }
  if (is_polyhedral(from)) {
    double best = 0.0;
    for (const Vector& x : unit_ball_vertices(from)) best = std::max(best, to(t * x));
    return best;
  }
  const FiberNorm to_dual = to.dual();
  if (is_polyhedral(to_dual)) {
    const FiberNorm from_dual = from.dual();
    double best = 0.0;
    for (const Vector& w : unit_ball_vertices(to_dual)) best = std::max(best, from_dual(t.transpose() * w));
    return best;
  }
  return smooth_operator_norm(t, from, to);
}

HomElement::HomElement(ModulePtr source, ModulePtr target, std::vector<Matrix> matrices,
                       std::optional<std::vector<std::size_t>> source_atoms)
    : source_(std::move(source)), target_(std::move(target)), matrices_(std::move(matrices)) {
  const std::size_t n = target_->size();
  if (source_atoms) {
    source_atoms_ = std::move(*source_atoms);
  } else {
    if (source_->size() != n) {
      throw Error(ErrorCode::DimensionMismatch, "modules over different spaces need an atom assignment");
    }
    source_atoms_.resize(n);
    std::iota(source_atoms_.begin(), source_atoms_.end(), std::size_t{0});
  }
  if (source_atoms_.size() != n) throw Error(ErrorCode::InvalidInput, "atom assignment needs one entry per target atom");
  if (matrices_.size() != n) throw Error(ErrorCode::DimensionMismatch, "hom needs one matrix per target atom");
  for (std::size_t t = 0; t < n; ++t) {
    if (source_atoms_[t] >= source_->size()) throw Error(ErrorCode::InvalidInput, "atom assignment out of range");
    const auto rows = static_cast<Eigen::Index>(target_->dim(t));
    const auto cols = static_cast<Eigen::Index>(source_->dim(source_atoms_[t]));
    if (matrices_[t].size() == 0 && (rows == 0 || cols == 0)) matrices_[t] = Matrix::Zero(rows, cols);
    if (matrices_[t].rows() != rows || matrices_[t].cols() != cols) {
      throw Error(ErrorCode::DimensionMismatch, "matrix does not fit the fibers", "/matrices/" + std::to_string(t));
    }
  }
}

HomElement HomElement::identity(const ModulePtr& m) {
  std::vector<Matrix> ms;
  for (std::size_t d : m->dims()) {
    ms.push_back(Matrix::Identity(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d)));
  }
  return HomElement(m, m, std::move(ms));
}

HomElement HomElement::zero(const ModulePtr& source, const ModulePtr& target,
                            std::optional<std::vector<std::size_t>> source_atoms) {
  std::vector<Matrix> ms;
  for (std::size_t t = 0; t < target->size(); ++t) {
    const std::size_t s = source_atoms ? (*source_atoms)[t] : t;
    const std::size_t cols = s < source->size() ? source->dim(s) : 0;
    ms.push_back(Matrix::Zero(static_cast<Eigen::Index>(target->dim(t)), static_cast<Eigen::Index>(cols)));
  }
  return HomElement(source, target, std::move(ms), std::move(source_atoms));
}

bool HomElement::is_untwisted() const {
  if (source_->size() != target_->size()) return false;
  for (std::size_t t = 0; t < source_atoms_.size(); ++t) {
    if (source_atoms_[t] != t) return false;
  }
  return true;
}

ModuleElement HomElement::operator()(const ModuleElement& v) const {
  if (!module::same_module(v.module_ptr(), source_)) {
    throw Error(ErrorCode::ModuleMismatch, "element is not in the source module");
  }
  std::vector<Vector> out(target_->size());
  for (std::size_t t = 0; t < out.size(); ++t) out[t] = matrices_[t] * v.at(source_atoms_[t]);
  return ModuleElement(target_, std::move(out));
}

Fn hom_norm(const HomElement& t) {
  Fn out = Fn::zeros(t.target()->size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = operator_norm(t.at(i), t.source()->fiber(t.source_atom(i)), t.target()->fiber(i));
  }
  return out;
}

HomElement compose(const HomElement& s, const HomElement& t) {
  if (!module::same_module(t.target(), s.source())) {
    throw Error(ErrorCode::ModuleMismatch, "maps are not composable");
  }
  std::vector<Matrix> ms;
  std::vector<std::size_t> atoms;
  for (std::size_t i = 0; i < s.target()->size(); ++i) {
    const std::size_t mid = s.source_atom(i);
    ms.push_back(s.at(i) * t.at(mid));
    atoms.push_back(t.source_atom(mid));
  }
  return HomElement(t.source(), s.target(), std::move(ms), std::move(atoms));
}

HomElement operator+(const HomElement& a, const HomElement& b) {
  if (!module::same_module(a.source(), b.source()) || !module::same_module(a.target(), b.target()) ||
      a.source_atoms() != b.source_atoms()) {
    throw Error(ErrorCode::ModuleMismatch, "maps between different modules");
  }
  std::vector<Matrix> ms;
  for (std::size_t i = 0; i < a.matrices().size(); ++i) ms.push_back(a.at(i) + b.at(i));
  return HomElement(a.source(), a.target(), std::move(ms), a.source_atoms());
}

HomElement operator*(double c, const HomElement& t) {
  std::vector<Matrix> ms;
  for (const auto& m : t.matrices()) ms.push_back(c * m);
  return HomElement(t.source(), t.target(), std::move(ms), t.source_atoms());
}

HomElement operator*(const Fn& u, const HomElement& t) {
  t.target()->structure().space().check(u);
  std::vector<Matrix> ms;
  for (std::size_t i = 0; i < t.matrices().size(); ++i) ms.push_back(u[i] * t.at(i));
  return HomElement(t.source(), t.target(), std::move(ms), t.source_atoms());
}

bool approx_equal(const HomElement& a, const HomElement& b, double tol) {
  if (!module::same_module(a.source(), b.source()) || !module::same_module(a.target(), b.target()) ||
      a.source_atoms() != b.source_atoms()) {
    return false;
  }
  for (std::size_t i = 0; i < a.matrices().size(); ++i) {
    if (a.at(i).size() == 0) continue;
    const double scale = 1.0 + std::max(a.at(i).cwiseAbs().maxCoeff(), b.at(i).cwiseAbs().maxCoeff());
    if ((a.at(i) - b.at(i)).cwiseAbs().maxCoeff() > tol * scale) return false;
  }
  return true;
}

HomElement glue_homs(const finite::Partition& partition, const std::vector<HomElement>& homs) {
  if (homs.empty() || partition.size() != homs.size()) {
    throw Error(ErrorCode::InvalidInput, "glueing needs one map per block");
  }
  const Fn& unit = partition.of().value();
  if (!(unit == Fn::ones(unit.size()))) throw Error(ErrorCode::NotAPartition, "blocks must partition the unit");
  const HomElement& first = homs.front();
  first.target()->structure().space().check(unit);
  std::vector<Matrix> ms(first.matrices());
  for (std::size_t n = 0; n < homs.size(); ++n) {
    if (!module::same_module(homs[n].source(), first.source()) ||
        !module::same_module(homs[n].target(), first.target()) || homs[n].source_atoms() != first.source_atoms()) {
      throw Error(ErrorCode::ModuleMismatch, "glued maps must share source and target");
    }
    for (std::size_t i = 0; i < ms.size(); ++i) {
      if (partition[n][i] == 1.0) ms[i] = homs[n].at(i);
    }
  }
  return HomElement(first.source(), first.target(), std::move(ms), first.source_atoms());
}

Submodule kernel(const HomElement& t) {
  const auto& src = t.source();
  std::vector<Matrix> stacked(src->size());
  for (std::size_t s = 0; s < src->size(); ++s) stacked[s] = Matrix(0, static_cast<Eigen::Index>(src->dim(s)));
  for (std::size_t i = 0; i < t.matrices().size(); ++i) {
    Matrix& acc = stacked[t.source_atom(i)];
    Matrix next(acc.rows() + t.at(i).rows(), acc.cols());
    next << acc, t.at(i);
    acc = std::move(next);
  }
  std::vector<Matrix> spans;
  for (const auto& m : stacked) spans.push_back(null_space(m));
  return Submodule(src, spans);
}

}  // namespace rieszmod::hom
