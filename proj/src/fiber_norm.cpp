#include "rieszmod/module/fiber_norm.hpp"

#include <cmath>
#include <limits>

#include "rieszmod/error.hpp"

namespace rieszmod::module {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double conjugate(double p) {
  if (p == 1.0) return kInf;
  if (std::isinf(p)) return 1.0;
  return p / (p - 1.0);
}

bool same_matrix(const Matrix& a, const Matrix& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() && (a.size() == 0 || a == b);
}

Matrix symmetrized(const Matrix& m) { return 0.5 * (m + m.transpose()); }

}  // namespace

FiberNorm FiberNorm::lp(std::size_t dim, double p) {
  if (!(p >= 1.0)) throw Error(ErrorCode::InvalidExponent, "fiber norm exponent must be at least 1");
  FiberNorm n;
  n.base_ = Base::Lp;
  n.p_ = p;
  n.plain_dim_ = dim;
  return n;
}

FiberNorm FiberNorm::gram(const Matrix& g) {
  if (g.rows() != g.cols()) throw Error(ErrorCode::InvalidInput, "gram matrix must be square");
  const double scale = g.size() ? g.cwiseAbs().maxCoeff() : 0.0;
  if (!is_symmetric(g, 1e-12 * (1.0 + scale))) throw Error(ErrorCode::InvalidInput, "gram matrix must be symmetric");
  const Matrix sym = symmetrized(g);
  if (!is_positive_definite(sym)) throw Error(ErrorCode::InvalidInput, "gram matrix must be positive definite");
  FiberNorm n;
  n.base_ = Base::Gram;
  n.p_ = 2.0;
  n.gram_ = sym;
  n.plain_dim_ = static_cast<std::size_t>(g.rows());
  if (sym.size()) n.gram_factor_ = sym.llt().matrixU();
  return n;
}

FiberNorm FiberNorm::mapped(const FiberNorm& base, const Matrix& a) {
  if (base.polar_) throw Error(ErrorCode::InvalidInput, "cannot precompose a polar norm");
  if (static_cast<std::size_t>(a.rows()) != base.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "map rows must match the base dimension");
  }
  if (numerical_rank(a) != static_cast<std::size_t>(a.cols())) {
    throw Error(ErrorCode::InvalidInput, "map must have full column rank for a norm");
  }
  FiberNorm n = base;
  n.map_ = base.map_ ? Matrix(*base.map_ * a) : a;
  return n;
}

std::size_t FiberNorm::dim() const {
  return map_ ? static_cast<std::size_t>(map_->cols()) : plain_dim_;
}

LpForm FiberNorm::form() const {
  if (polar_) throw Error(ErrorCode::InvalidInput, "polar norms have no direct form");
  const auto k = static_cast<Eigen::Index>(plain_dim_);
  Matrix c = map_ ? *map_ : Matrix(Matrix::Identity(k, k));
  if (base_ == Base::Gram && k > 0) c = gram_factor_ * c;
  return {std::move(c), p_};
}

double FiberNorm::operator()(const Vector& x) const {
  if (static_cast<std::size_t>(x.size()) != dim()) {
    throw Error(ErrorCode::DimensionMismatch, "vector does not match the fiber dimension");
  }
  if (x.size() == 0) return 0.0;
  if (polar_) return lp_preimage_support(*map_, p_, x).value;
  if (!map_ && base_ == Base::Lp) return lp_vector_norm(x, p_);
  const LpForm f = form();
  return lp_vector_norm(f.c * x, f.p);
}

std::optional<Matrix> FiberNorm::euclidean_gram() const {
  if (polar_) return std::nullopt;
  if (base_ == Base::Lp && p_ != 2.0) return std::nullopt;
  const auto k = static_cast<Eigen::Index>(plain_dim_);
  const Matrix g = base_ == Base::Gram ? gram_ : Matrix(Matrix::Identity(k, k));
  if (!map_) return g;
  return symmetrized(map_->transpose() * g * *map_);
}

FiberNorm FiberNorm::dual() const {
  if (polar_) {
    FiberNorm n = *this;
    n.polar_ = false;
    return n;
  }
  if (!map_ && base_ == Base::Lp) return lp(plain_dim_, conjugate(p_));
  if (const auto h = euclidean_gram()) {
    if (h->size() == 0) return lp(0, 2.0);
    return gram(symmetrized(h->llt().solve(Matrix::Identity(h->rows(), h->cols()))));
  }
  // Non-Euclidean l^p base with a map.
  if (map_->rows() == map_->cols()) {
    const Matrix inv_t = map_->transpose().inverse();
    return mapped(lp(plain_dim_, conjugate(p_)), inv_t);
  }
  FiberNorm n = *this;
  n.polar_ = true;
  return n;
}

AffineMin FiberNorm::min_affine(const Vector& x0, const Matrix& s, double g, const Vector& ell) const {
  if (static_cast<std::size_t>(x0.size()) != dim() || static_cast<std::size_t>(s.rows()) != dim()) {
    throw Error(ErrorCode::DimensionMismatch, "affine data does not match the fiber dimension");
  }
  if (!polar_) {
    const LpForm f = form();
    return min_affine_norm(f.c * x0, f.c * s, f.p, g, ell);
  }
  // Joint variables (eta, t) with A^T eta - s t = x0.
  const Matrix& a = *map_;
  const Eigen::Index k = a.rows(), m = s.cols();
  Matrix kmat(a.cols(), k + m);
  kmat << a.transpose(), -s;
  const Vector z0 = kmat.completeOrthogonalDecomposition().solve(x0);
  const Matrix nk = null_space(kmat);
  const Vector ell_full = ell.size() ? ell : Vector(Vector::Zero(m));
  const Matrix n_eta = nk.topRows(k), n_t = nk.bottomRows(m);
  AffineMin r = min_affine_norm(z0.head(k), n_eta, conjugate(p_), g, n_t.transpose() * ell_full);
  const Vector t = z0.tail(m) + n_t * r.t;
  r.value -= ell_full.dot(z0.tail(m));
  r.t = t;
  return r;
}

Vector FiberNorm::norming(const Vector& x) const {
  if (static_cast<std::size_t>(x.size()) != dim()) {
    throw Error(ErrorCode::DimensionMismatch, "vector does not match the fiber dimension");
  }
  if (x.size() == 0 || (*this)(x) == 0.0) return Vector::Zero(x.size());
  if (!polar_) {
    const LpForm f = form();
    return f.c.transpose() * lp_norming_vector(f.c * x, f.p);
  }
  return lp_preimage_support(*map_, p_, x).t;
}

bool operator==(const FiberNorm& a, const FiberNorm& b) {
  if (a.base_ != b.base_ || a.polar_ != b.polar_ || a.plain_dim_ != b.plain_dim_) return false;
  if (!(a.p_ == b.p_)) return false;
  if (!same_matrix(a.gram_, b.gram_)) return false;
  if (a.map_.has_value() != b.map_.has_value()) return false;
  return !a.map_ || same_matrix(*a.map_, *b.map_);
}

nlohmann::json to_json(const FiberNorm& n) {
  nlohmann::json j;
  if (n.base() == FiberNorm::Base::Gram) {
    j["gram"] = rieszmod::to_json(n.gram_matrix());
  } else if (std::isinf(n.p())) {
    j["lp"] = "inf";
  } else {
    j["lp"] = n.p();
  }
  if (n.map()) j["map"] = rieszmod::to_json(*n.map());
  if (n.is_polar()) j["polar"] = true;
  return j;
}

FiberNorm fiber_norm_from_json(std::size_t dim, const nlohmann::json& j) {
  if (!j.is_object()) throw Error(ErrorCode::InvalidInput, "fiber norm must be an object");
  for (const auto& [key, _] : j.items()) {
    if (key != "lp" && key != "gram" && key != "map" && key != "polar") {
      throw Error(ErrorCode::InvalidInput, "unknown fiber norm field '" + key + "'");
    }
  }
  if (j.contains("lp") == j.contains("gram")) {
    throw Error(ErrorCode::InvalidInput, "fiber norm needs exactly one of \"lp\" and \"gram\"");
  }
  FiberNorm base = FiberNorm::lp(0, 2.0);
  if (j.contains("gram")) {
    base = FiberNorm::gram(matrix_from_json(j["gram"], "gram"));
  } else {
    const auto& p = j["lp"];
    double value;
    if (p.is_string() && p.get<std::string>() == "inf") {
      value = kInf;
    } else if (p.is_number()) {
      value = p.get<double>();
    } else {
      throw Error(ErrorCode::InvalidInput, "\"lp\" must be a number or \"inf\"");
    }
    const std::size_t base_dim = j.contains("map") ? j["map"].size() : dim;
    base = FiberNorm::lp(base_dim, value);
  }
  FiberNorm out = j.contains("map") ? FiberNorm::mapped(base, matrix_from_json(j["map"], "map")) : base;
  if (j.value("polar", false)) {
    out = out.dual();
    if (!out.is_polar()) throw Error(ErrorCode::InvalidInput, "\"polar\" needs a non-square map on a non-Euclidean base");
  }
  if (out.dim() != dim) throw Error(ErrorCode::DimensionMismatch, "fiber norm does not match the declared dim");
  return out;
}

}  // namespace rieszmod::module
