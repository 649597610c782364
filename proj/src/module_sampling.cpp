#include "rieszmod/module/sampling.hpp"

#include <limits>

#include "rieszmod/finite/sampling.hpp"

namespace rieszmod::module {

namespace {

Matrix random_matrix(Rng& rng, Eigen::Index r, Eigen::Index c) {
  Matrix m(r, c);
  for (Eigen::Index i = 0; i < r; ++i)
    for (Eigen::Index j = 0; j < c; ++j) m(i, j) = rng.uniform(-2.0, 2.0);
  return m;
}

}  // namespace

FiberNorm random_fiber_norm(Rng& rng, std::size_t dim) {
  const double exponents[] = {1.0, 1.5, 2.0, 3.0, std::numeric_limits<double>::infinity()};
  const auto d = static_cast<Eigen::Index>(dim);
  const std::size_t kind = dim == 0 ? 0 : rng.index(4);
  if (kind == 0 || kind == 1) return FiberNorm::lp(dim, exponents[rng.index(5)]);
  if (kind == 2) {
    const Matrix b = random_matrix(rng, d, d);
    return FiberNorm::gram(b * b.transpose() + 0.5 * Matrix::Identity(d, d));
  }
  // A well-conditioned tall map.
  const Matrix a = random_matrix(rng, d + 1, d) + 2.0 * Matrix::Identity(d + 1, d);
  return FiberNorm::mapped(FiberNorm::lp(dim + 1, rng.coin() ? 1.0 : std::numeric_limits<double>::infinity()), a);
}

ModulePtr random_module(Rng& rng, std::size_t n, std::size_t max_dim) {
  auto structure = finite::random_structure(rng, n);
  std::vector<FiberNorm> fibers;
  for (std::size_t i = 0; i < n; ++i) fibers.push_back(random_fiber_norm(rng, rng.index(max_dim + 1)));
  return make_module(std::move(structure), std::move(fibers));
}

ModuleElement random_element(Rng& rng, const ModulePtr& module, double scale) {
  std::vector<Vector> vs;
  for (std::size_t d : module->dims()) {
    Vector x = Vector::Zero(static_cast<Eigen::Index>(d));
    if (!rng.coin(0.15)) {
      for (Eigen::Index k = 0; k < x.size(); ++k) x(k) = rng.uniform(-scale, scale);
    }
    vs.push_back(std::move(x));
  }
  return ModuleElement(module, std::move(vs));
}

}  // namespace rieszmod::module
