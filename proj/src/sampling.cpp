#include "rieszmod/finite/sampling.hpp"

#include <cmath>

namespace rieszmod::finite {

Fn random_fn(Rng& rng, std::size_t n, double scale) {
  std::vector<double> v(n);
  for (auto& x : v) {
    const double r = rng.uniform();
    if (r < 0.15) {
      x = 0.0;
    } else if (r < 0.25) {
      x = std::round(rng.uniform(-scale, scale));
    } else {
      x = rng.uniform(-scale, scale);
    }
  }
  return Fn(std::move(v));
}

Fn random_nonnegative_fn(Rng& rng, std::size_t n, double scale) { return abs(random_fn(rng, n, scale)); }

Fn random_idempotent(Rng& rng, std::size_t n) {
  std::vector<double> v(n);
  for (auto& x : v) x = rng.coin() ? 1.0 : 0.0;
  return Fn(std::move(v));
}

Partition random_partition(Rng& rng, std::size_t n, std::size_t max_parts) {
  std::vector<std::size_t> block(n);
  for (auto& b : block) b = rng.index(max_parts == 0 ? 1 : max_parts);
  std::vector<std::size_t> order;  // block labels by first appearance
  std::vector<Idem> parts;
  std::vector<Fn> cells;
  for (std::size_t x = 0; x < n; ++x) {
    std::size_t k = 0;
    while (k < order.size() && order[k] != block[x]) ++k;
    if (k == order.size()) {
      order.push_back(block[x]);
      cells.push_back(Fn::zeros(n));
    }
    cells[k][x] = 1.0;
  }
  for (auto& c : cells) parts.emplace_back(std::move(c));
  return Partition(std::move(parts), Idem(Fn::ones(n)));
}

std::vector<order::LawTriple<Fn>> random_triples(Rng& rng, std::size_t count, std::size_t n) {
  return random_triples(rng, count, n, n);
}

std::vector<order::LawTriple<Fn>> random_triples(Rng& rng, std::size_t count, std::size_t min_atoms,
                                                 std::size_t max_atoms) {
  std::vector<order::LawTriple<Fn>> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    const std::size_t n = min_atoms + rng.index(max_atoms - min_atoms + 1);
    Fn u = random_fn(rng, n);
    Fn v = random_fn(rng, n);
    Fn w = random_fn(rng, n);
    out.push_back({std::move(u), std::move(v), std::move(w)});
  }
  return out;
}

FiniteFStructure random_structure(Rng& rng, std::size_t n) {
  const SpaceType vs[] = {SpaceType::lp(1.0), SpaceType::lp(2.0), SpaceType::lp(3.0), SpaceType::linf(),
                          SpaceType::l0()};
  const SpaceType u = rng.coin() ? SpaceType::linf() : SpaceType::l0();
  const SpaceType v = vs[rng.index(5)];
  return FiniteFStructure(FiniteMeasureSpace::unnamed(rng.uniform_vector(n, 0.5, 2.0)), u, v);
}

}  // namespace rieszmod::finite
