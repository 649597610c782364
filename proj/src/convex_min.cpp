#include "rieszmod/module/convex_min.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "rieszmod/error.hpp"

namespace rieszmod::module {

namespace {

constexpr double kInfinity = std::numeric_limits<double>::infinity();
constexpr double kNegInf = -kInfinity;
// Sweeps stop once they gain less than this, relative to the value.
constexpr double kSweepGain = 1e-14;
constexpr double kFeasibilityTol = 1e-12;

}  // namespace

void for_each_subset(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& visit) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  for (;;) {
    visit(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

namespace {

double objective(const Vector& a, const Matrix& m, double p, double g, const Vector& ell, const Vector& t) {
  return g * lp_vector_norm(a + m * t, p) - ell.dot(t);
}

// Solves a square system, rejecting numerically singular ones.
bool solve_square(const Matrix& s, const Vector& rhs, Vector& out) {
  Eigen::FullPivLU<Matrix> lu(s);
  lu.setThreshold(1e-12);
  if (lu.rank() < s.rows()) return false;
  out = lu.solve(rhs);
  return out.allFinite();
}

AffineMin min_l1(const Vector& a, const Matrix& m, double g, const Vector& ell) {
  const auto k = static_cast<std::size_t>(m.rows());
  const auto d = static_cast<std::size_t>(m.cols());
  AffineMin best{std::numeric_limits<double>::infinity(), Vector::Zero(m.cols()), true};
  // Some optimum zeroes d linearly independent residual coordinates.
  for_each_subset(k, d, [&](const std::vector<std::size_t>& rows) {
    Matrix s(d, d);
    Vector rhs(d);
    for (std::size_t i = 0; i < d; ++i) {
      s.row(static_cast<Eigen::Index>(i)) = m.row(static_cast<Eigen::Index>(rows[i]));
      rhs(static_cast<Eigen::Index>(i)) = -a(static_cast<Eigen::Index>(rows[i]));
    }
    Vector t;
    if (!solve_square(s, rhs, t)) return;
    const double f = objective(a, m, 1.0, g, ell, t);
    if (f < best.value) best = {f, t, true};
  });
  return best;
}

AffineMin min_linf(const Vector& a, const Matrix& m, double g, const Vector& ell) {
  const auto k = static_cast<std::size_t>(m.rows());
  const auto d = static_cast<std::size_t>(m.cols());
  AffineMin best{std::numeric_limits<double>::infinity(), Vector::Zero(m.cols()), true};
  // Variables (t, s); constraints +-(a_i + m_i t) <= s, d + 1 of them active.
  for_each_subset(2 * k, d + 1, [&](const std::vector<std::size_t>& picks) {
    Matrix s(d + 1, d + 1);
    Vector rhs(d + 1);
    for (std::size_t i = 0; i < picks.size(); ++i) {
      const auto row = static_cast<Eigen::Index>(picks[i] / 2);
      const double sign = picks[i] % 2 == 0 ? 1.0 : -1.0;
      const auto r = static_cast<Eigen::Index>(i);
      s.row(r).head(static_cast<Eigen::Index>(d)) = sign * m.row(row);
      s(r, static_cast<Eigen::Index>(d)) = -1.0;
      rhs(r) = -sign * a(row);
    }
    Vector sol;
    if (!solve_square(s, rhs, sol)) return;
    const Vector t = sol.head(static_cast<Eigen::Index>(d));
    const double level = sol(static_cast<Eigen::Index>(d));
    const Vector r = a + m * t;
    if (r.size() && r.cwiseAbs().maxCoeff() > level + kFeasibilityTol * (1.0 + std::abs(level))) return;
    const double f = objective(a, m, kInfinity, g, ell, t);
    if (f < best.value) best = {f, t, true};
  });
  return best;
}

AffineMin min_l2(const Vector& a, const Matrix& m, double g, const Vector& ell) {
  Eigen::HouseholderQR<Matrix> qr(m);
  const auto d = m.cols();
  const Matrix q = qr.householderQ() * Matrix::Identity(m.rows(), d);
  const Matrix r = qr.matrixQR().topRows(d).triangularView<Eigen::Upper>();
  const Vector a_par = q * (q.transpose() * a);
  const Vector a_perp = a - a_par;
  // ell . t = c . (residual - a) with c the range-space representer of ell.
  const Vector c = q * r.transpose().triangularView<Eigen::Lower>().solve(ell);
  const double cn = c.norm();
  const double perp = a_perp.norm();
  AffineMin out;
  if (cn > g * (1.0 + 1e-12)) {
    out.bounded = false;
    out.value = kNegInf;
    out.t = Vector::Zero(d);
    return out;
  }
  const double gap = g * g - cn * cn;
  const double scale = (perp == 0.0 || gap <= 0.0) ? 0.0 : perp / std::sqrt(gap);
  const Vector residual = a_perp + scale * c;
  out.t = r.triangularView<Eigen::Upper>().solve(q.transpose() * (residual - a));
  out.value = objective(a, m, 2.0, g, ell, out.t);
  if (gap <= 0.0 && perp > 0.0) out.value = c.dot(a);  // infimum approached at infinity
  return out;
}

AffineMin min_smooth(const Vector& a, const Matrix& m, double p, double g, const Vector& ell) {
  const auto d = m.cols();
  Vector t = least_squares(m, -a).x;
  auto f = [&](const Vector& x) { return objective(a, m, p, g, ell, x); };
  double value = f(t);
  Vector prev_sweep = t;
  const int max_sweeps = 10000;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    const double start = value;
    auto line = [&](const Vector& dir) {
      const double dn = dir.cwiseAbs().maxCoeff();
      if (!(dn > 0.0)) return true;
      const double h = 1e-2 * (1.0 + t.cwiseAbs().maxCoeff()) / dn;
      const LineMin lm = golden_line_search([&](double s) { return f(t + s * dir); }, h);
      if (!lm.bounded) return false;
      if (lm.value < value) {
        t += lm.s * dir;
        value = lm.value;
      }
      return true;
    };
    for (Eigen::Index j = 0; j < d; ++j) {
      if (!line(Vector::Unit(d, j))) return {kNegInf, t, false};
    }
    const Vector res = a + m * t;
    const double norm = lp_vector_norm(res, p);
    if (norm > 0.0) {
      Vector grad_norm(res.size());
      for (Eigen::Index i = 0; i < res.size(); ++i) {
        grad_norm(i) = std::copysign(std::pow(std::abs(res(i)) / norm, p - 1.0), res(i));
      }
      const Vector grad = g * (m.transpose() * grad_norm) - ell;
      if (!line(-grad)) return {kNegInf, t, false};
    }
    if (!line(t - prev_sweep)) return {kNegInf, t, false};
    prev_sweep = t;
    if (start - value <= kSweepGain * (1.0 + std::abs(value))) break;
  }
  return {value, t, true};
}

double conjugate_of(double p) {
  if (p == 1.0) return kInfinity;
  if (std::isinf(p)) return 1.0;
  return p / (p - 1.0);
}

}  // namespace

std::vector<Vector> lp_preimage_ball_vertices(const Matrix& m, double p) {
  const auto k = static_cast<std::size_t>(m.rows());
  const auto d = m.cols();
  std::vector<Vector> out;
  if (d == 0) return out;
  if (p == 1.0) {
    // Extreme points lie on lines cut out by d - 1 rows.
    for_each_subset(k, static_cast<std::size_t>(d - 1), [&](const std::vector<std::size_t>& rows) {
      Matrix sub(static_cast<Eigen::Index>(rows.size()), d);
      for (std::size_t i = 0; i < rows.size(); ++i) {
        sub.row(static_cast<Eigen::Index>(i)) = m.row(static_cast<Eigen::Index>(rows[i]));
      }
      const Matrix dir = null_space(sub);
      if (dir.cols() != 1) return;
      const Vector t = dir.col(0) / (m * dir.col(0)).cwiseAbs().sum();
      out.push_back(t);
      out.push_back(-t);
    });
    return out;
  }
  if (!std::isinf(p)) throw Error(ErrorCode::InvalidInput, "only l1 and l-inf balls are polyhedral");
  // d active constraints |m_i . t| = 1.
  for_each_subset(k, static_cast<std::size_t>(d), [&](const std::vector<std::size_t>& rows) {
    Matrix sub(d, d);
    for (Eigen::Index i = 0; i < d; ++i) sub.row(i) = m.row(static_cast<Eigen::Index>(rows[static_cast<std::size_t>(i)]));
    Eigen::FullPivLU<Matrix> lu(sub);
    lu.setThreshold(1e-12);
    if (lu.rank() < d) return;
    for (std::size_t signs = 0; signs < (std::size_t{1} << d); ++signs) {
      Vector rhs(d);
      for (Eigen::Index i = 0; i < d; ++i) rhs(i) = (signs >> i) & 1 ? -1.0 : 1.0;
      const Vector t = lu.solve(rhs);
      if ((m * t).cwiseAbs().maxCoeff() > 1.0 + kFeasibilityTol) continue;
      out.push_back(t);
    }
  });
  return out;
}

Support lp_preimage_support(const Matrix& m, double p, const Vector& ell) {
  if (!(p >= 1.0)) throw Error(ErrorCode::InvalidExponent, "norm exponent must be at least 1");
  if (ell.size() != m.cols()) throw Error(ErrorCode::DimensionMismatch, "linear term has the wrong size");
  const auto d = m.cols();
  if (d == 0 || ell.isZero(0.0)) return {0.0, Vector::Zero(d)};
  if (p == 1.0 || std::isinf(p)) {
    Support best{kNegInf, Vector::Zero(d)};
    for (const Vector& t : lp_preimage_ball_vertices(m, p)) {
      const double v = ell.dot(t);
      if (v > best.value) best = {v, t};
    }
    return best;
  }
  if (p == 2.0) {
    const Vector u = (m.transpose() * m).ldlt().solve(ell);
    const double n = (m * u).norm();
    return {ell.dot(u) / n, u / n};
  }
  // min ||y0 + N s||_q over the solutions of M^T y = ell; the gradient of
  // the q-norm at the optimum lies in the range of M and pulls back to t.
  const Matrix mt = m.transpose();
  const Vector y0 = mt.completeOrthogonalDecomposition().solve(ell);
  const Matrix null = null_space(mt);
  const double q = conjugate_of(p);
  const AffineMin r = min_affine_norm(y0, null, q);
  const Vector y = y0 + null * r.t;
  const Vector t = m.completeOrthogonalDecomposition().solve(lp_norming_vector(y, q));
  const double n = lp_vector_norm(m * t, p);
  return {r.value, n > 0.0 ? Vector(t / n) : t};
}

double lp_vector_norm(const Vector& x, double p) {
  if (x.size() == 0) return 0.0;
  if (std::isinf(p)) return x.cwiseAbs().maxCoeff();
  if (p == 1.0) return x.cwiseAbs().sum();
  if (p == 2.0) return x.stableNorm();
  const double top = x.cwiseAbs().maxCoeff();
  if (top == 0.0) return 0.0;
  double s = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) s += std::pow(std::abs(x(i)) / top, p);
  return top * std::pow(s, 1.0 / p);
}

Vector lp_norming_vector(const Vector& x, double p) {
  Vector y = Vector::Zero(x.size());
  const double norm = lp_vector_norm(x, p);
  if (norm == 0.0) return y;
  if (p == 1.0) {
    for (Eigen::Index i = 0; i < x.size(); ++i) y(i) = x(i) > 0 ? 1.0 : (x(i) < 0 ? -1.0 : 0.0);
    return y;
  }
  if (std::isinf(p)) {
    // All mass on the first coordinate of largest modulus.
    Eigen::Index arg = 0;
    x.cwiseAbs().maxCoeff(&arg);
    y(arg) = x(arg) > 0 ? 1.0 : -1.0;
    return y;
  }
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    y(i) = std::copysign(std::pow(std::abs(x(i)) / norm, p - 1.0), x(i));
  }
  return y;
}

AffineMin min_affine_norm(const Vector& a, const Matrix& m, double p, double g, const Vector& ell_in) {
  if (!(p >= 1.0)) throw Error(ErrorCode::InvalidExponent, "norm exponent must be at least 1");
  if (m.rows() != a.size()) throw Error(ErrorCode::DimensionMismatch, "affine map and offset disagree in size");
  const Vector ell = ell_in.size() == 0 ? Vector::Zero(m.cols()) : ell_in;
  if (ell.size() != m.cols()) throw Error(ErrorCode::DimensionMismatch, "linear term has the wrong size");
  if (m.cols() == 0) return {g * lp_vector_norm(a, p), Vector(0), true};
  if (g == 0.0) {
    if (ell.isZero(0.0)) return {0.0, Vector::Zero(m.cols()), true};
    return {kNegInf, Vector::Zero(m.cols()), false};
  }
  // Unbounded exactly when some direction gains more from ell than the norm
  // costs.
  if (!ell.isZero(0.0) && p != 2.0) {
    const Support h = lp_preimage_support(m, p, ell);
    if (h.value > g * (1.0 + 1e-12)) return {kNegInf, h.t, false};
  }
  if (p == 1.0) return min_l1(a, m, g, ell);
  if (std::isinf(p)) return min_linf(a, m, g, ell);
  if (p == 2.0) return min_l2(a, m, g, ell);
  return min_smooth(a, m, p, g, ell);
}

}  // namespace rieszmod::module
