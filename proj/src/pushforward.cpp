#include "rieszmod/constructions/pushforward.hpp"

#include <numeric>

#include "rieszmod/error.hpp"

namespace rieszmod::constructions {

namespace {

void require_over_source(const StructureHom& phi, const ModulePtr& m) {
  if (!(phi.source().space() == m->structure().space())) {
    throw Error(ErrorCode::SpaceMismatch, "module is not over the source of the structure hom");
  }
}

std::vector<Matrix> identities(const ModulePtr& m) { return HomElement::identity(m).matrices(); }

}  // namespace

Pushforward pushforward_module(const StructureHom& phi, const ModulePtr& m) {
  require_over_source(phi, m);
  const auto& map = phi.atom_map();
  // The direct sum of the fibers is the vector space; psi(v)(t) is the norm
  // of the block at map(t).
  std::vector<Eigen::Index> offset(m->size() + 1, 0);
  for (std::size_t a = 0; a < m->size(); ++a) offset[a + 1] = offset[a] + static_cast<Eigen::Index>(m->dim(a));
  const Eigen::Index total = offset.back();
  std::vector<SublinearMap::Seminorm> seminorms;
  for (std::size_t t = 0; t < map.size(); ++t) {
    const std::size_t a = map[t];
    const auto d = static_cast<Eigen::Index>(m->dim(a));
    Matrix b = Matrix::Zero(d, total);
    b.block(0, offset[a], d, d) = Matrix::Identity(d, d);
    seminorms.push_back({std::move(b), m->fiber(a)});
  }
  const auto structure = phi.target().with_v(m->structure().v());
  const GeneratedModule gen = generate_module(SublinearMap::seminorm_family(static_cast<std::size_t>(total), seminorms),
                                              structure);
  std::vector<Matrix> blocks;
  for (std::size_t t = 0; t < map.size(); ++t) {
    const std::size_t a = map[t];
    blocks.push_back(gen.generator(t).middleCols(offset[a], static_cast<Eigen::Index>(m->dim(a))));
  }
  HomElement pf(m, gen.module(), std::move(blocks), map);
  return {gen.module(), std::move(pf)};
}

HomElement pushforward_hom(const StructureHom& phi, const HomElement& t) {
  if (!t.is_untwisted()) throw Error(ErrorCode::UnsupportedHom, "pushforward needs a hom over the identity");
  const auto pm = pushforward_module(phi, t.source());
  const auto pn = pushforward_module(phi, t.target());
  std::vector<Matrix> ms;
  for (std::size_t i = 0; i < pn.module->size(); ++i) {
    // Fibers are copies, so the square commutes with the copied matrix.
    ms.push_back(t.at(phi.atom_map()[i]));
  }
  return HomElement(pm.module, pn.module, std::move(ms));
}

HomElement dual_embed(const StructureHom& phi, const ModulePtr& m) {
  const ModulePtr dual = hom::dual_module(m);
  const auto pushed_dual = pushforward_module(phi, dual);
  const auto pushed = pushforward_module(phi, m);
  const ModulePtr dual_of_pushed = hom::dual_module(pushed.module);
  // <I(phi_* omega), phi_* v> = phi(<omega, v>) with both pushforwards
  // copying fibers: I is the identity on coordinates.
  return HomElement(pushed_dual.module, dual_of_pushed, identities(pushed.module));
}

Completion complete(const ModulePtr& m) { return {m, HomElement::identity(m)}; }

Pushforward pullback_module(const std::vector<std::size_t>& point_map, const ModulePtr& m,
                            const FiniteFStructure& source, std::optional<double> max_compression) {
  const double c = hom::compression_constant(point_map, source.space(), m->structure().space());
  if (max_compression && c > *max_compression) {
    throw Error(ErrorCode::CompressionViolated, "point map compresses more than allowed");
  }
  const auto phi = StructureHom::precomposition(m->structure(), source, point_map);
  return pushforward_module(phi, m);
}

}  // namespace rieszmod::constructions
