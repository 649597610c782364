#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

namespace rieszmod {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Singular values below 1e-9 * max(largest singular value, 1) count as zero.
inline constexpr double kRankTolerance = 1e-9;

double rank_threshold(const Matrix& m);
std::size_t numerical_rank(const Matrix& m);

/// Orthonormal basis of the null space, one column per direction.
Matrix null_space(const Matrix& m);

/// Greedy left-to-right choice of columns: a column is kept when its
/// residual against the already kept ones exceeds the rank tolerance
/// (relative to the largest column norm, or 1).
std::vector<std::size_t> pivot_columns(const Matrix& m);
Matrix select_columns(const Matrix& m, const std::vector<std::size_t>& cols);

Matrix pseudo_inverse(const Matrix& m);

/// Least-squares solution of m x = b together with the residual norm.
struct LeastSquares {
  Matrix x;
  double residual;
};
LeastSquares least_squares(const Matrix& m, const Matrix& b);

bool is_symmetric(const Matrix& m, double tol = 0.0);
bool is_positive_definite(const Matrix& m);
bool is_exact_identity(const Matrix& m);

nlohmann::json to_json(const Matrix& m);
nlohmann::json to_json(const Vector& v);
Matrix matrix_from_json(const nlohmann::json& j, const char* what);
Vector vector_from_json(const nlohmann::json& j, const char* what);

}  // namespace rieszmod
