#include "rieszmod/linalg.hpp"

#include <algorithm>
#include <cmath>

#include "rieszmod/error.hpp"

namespace rieszmod {

double rank_threshold(const Matrix& m) {
  if (m.size() == 0) return kRankTolerance;
  Eigen::JacobiSVD<Matrix> svd(m);
  const double top = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
  return kRankTolerance * std::max(top, 1.0);
}

std::size_t numerical_rank(const Matrix& m) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Matrix> svd(m);
  const auto& s = svd.singularValues();
  const double cut = kRankTolerance * std::max(s.size() ? s(0) : 0.0, 1.0);
  std::size_t r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) r += s(i) > cut;
  return r;
}

Matrix null_space(const Matrix& m) {
  const Eigen::Index n = m.cols();
  if (n == 0) return Matrix(0, 0);
  if (m.rows() == 0) return Matrix::Identity(n, n);
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double cut = kRankTolerance * std::max(s.size() ? s(0) : 0.0, 1.0);
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) r += s(i) > cut;
  return svd.matrixV().rightCols(n - r);
}

std::vector<std::size_t> pivot_columns(const Matrix& m) {
  double top = 0.0;
  for (Eigen::Index j = 0; j < m.cols(); ++j) top = std::max(top, m.col(j).norm());
  const double cut = kRankTolerance * std::max(top, 1.0);
  std::vector<std::size_t> kept;
  Matrix q(m.rows(), 0);
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    Vector r = m.col(j);
    // Two passes of Gram-Schmidt keep the residual accurate.
    for (int pass = 0; pass < 2; ++pass) r -= q * (q.transpose() * r);
    const double norm = r.norm();
    if (norm > cut) {
      kept.push_back(static_cast<std::size_t>(j));
      q.conservativeResize(Eigen::NoChange, q.cols() + 1);
      q.col(q.cols() - 1) = r / norm;
    }
  }
  return kept;
}

Matrix select_columns(const Matrix& m, const std::vector<std::size_t>& cols) {
  Matrix out(m.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t k = 0; k < cols.size(); ++k) out.col(static_cast<Eigen::Index>(k)) = m.col(static_cast<Eigen::Index>(cols[k]));
  return out;
}

Matrix pseudo_inverse(const Matrix& m) {
  if (m.size() == 0) return Matrix::Zero(m.cols(), m.rows());
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& s = svd.singularValues();
  const double cut = kRankTolerance * std::max(s.size() ? s(0) : 0.0, 1.0);
  Vector inv = Vector::Zero(s.size());
  for (Eigen::Index i = 0; i < s.size(); ++i) inv(i) = s(i) > cut ? 1.0 / s(i) : 0.0;
  return svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
}

LeastSquares least_squares(const Matrix& m, const Matrix& b) {
  if (m.cols() == 0) return {Matrix::Zero(0, b.cols()), b.norm()};
  Matrix x = m.completeOrthogonalDecomposition().solve(b);
  return {x, (m * x - b).norm()};
}

bool is_symmetric(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < m.cols(); ++j) {
      if (std::abs(m(i, j) - m(j, i)) > tol) return false;
    }
  }
  return true;
}

bool is_positive_definite(const Matrix& m) {
  if (m.rows() != m.cols()) return false;
  if (m.rows() == 0) return true;
  Eigen::LLT<Matrix> llt(m);
  if (llt.info() != Eigen::Success) return false;
  Eigen::SelfAdjointEigenSolver<Matrix> eig(m, Eigen::EigenvaluesOnly);
  return eig.eigenvalues()(0) > kRankTolerance * std::max(eig.eigenvalues().maxCoeff(), 1.0);
}

bool is_exact_identity(const Matrix& m) {
  return m.rows() == m.cols() && m == Matrix::Identity(m.rows(), m.cols());
}

nlohmann::json to_json(const Matrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

nlohmann::json to_json(const Vector& v) {
  nlohmann::json out = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Matrix matrix_from_json(const nlohmann::json& j, const char* what) {
  if (!j.is_array()) throw Error(ErrorCode::InvalidInput, std::string(what) + " must be an array of rows");
  const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
  Eigen::Index cols = -1;
  Matrix m;
  for (Eigen::Index i = 0; i < rows; ++i) {
    const auto& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array()) throw Error(ErrorCode::InvalidInput, std::string(what) + " rows must be arrays");
    if (cols < 0) {
      cols = static_cast<Eigen::Index>(row.size());
      m.resize(rows, cols);
    }
    if (static_cast<Eigen::Index>(row.size()) != cols) {
      throw Error(ErrorCode::InvalidInput, std::string(what) + " rows must have equal length");
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      const auto& x = row[static_cast<std::size_t>(c)];
      if (!x.is_number()) throw Error(ErrorCode::InvalidInput, std::string(what) + " entries must be numbers");
      m(i, c) = x.get<double>();
    }
  }
  if (cols < 0) m.resize(0, 0);
  return m;
}

Vector vector_from_json(const nlohmann::json& j, const char* what) {
  if (!j.is_array()) throw Error(ErrorCode::InvalidInput, std::string(what) + " must be an array");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw Error(ErrorCode::InvalidInput, std::string(what) + " entries must be numbers");
    v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
  }
  return v;
}

}  // namespace rieszmod
