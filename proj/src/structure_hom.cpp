#include "rieszmod/hom/structure_hom.hpp"

#include "rieszmod/error.hpp"

namespace rieszmod::hom {

StructureHom StructureHom::precomposition(FiniteFStructure source, FiniteFStructure target,
                                          std::vector<std::size_t> atom_map) {
  if (atom_map.size() != target.size()) {
    throw Error(ErrorCode::InvalidInput, "atom map needs one entry per target atom", "/atom_map");
  }
  for (std::size_t t = 0; t < atom_map.size(); ++t) {
    if (atom_map[t] >= source.size()) {
      throw Error(ErrorCode::InvalidInput, "atom map entry out of range", "/atom_map/" + std::to_string(t));
    }
  }
  StructureHom h(std::move(source), std::move(target));
  h.atom_map_ = std::move(atom_map);
  return h;
}

StructureHom StructureHom::identity(const FiniteFStructure& s) {
  std::vector<std::size_t> map(s.size());
  for (std::size_t i = 0; i < map.size(); ++i) map[i] = i;
  return precomposition(s, s, std::move(map));
}

StructureHom StructureHom::from_matrix(FiniteFStructure source, FiniteFStructure target, const Matrix& m) {
  if (static_cast<std::size_t>(m.rows()) != target.size() || static_cast<std::size_t>(m.cols()) != source.size()) {
    throw Error(ErrorCode::DimensionMismatch, "matrix must be target atoms x source atoms");
  }
  std::vector<std::size_t> map;
  bool selector = true;
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Eigen::Index ones = 0, at = 0;
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (m(r, c) < 0.0) throw Error(ErrorCode::InvalidInput, "algebra maps are positive");
      if (m(r, c) == 1.0) ++ones, at = c;
      else if (m(r, c) != 0.0) selector = false;
    }
    if (std::abs(m.row(r).sum() - 1.0) > 1e-12) throw Error(ErrorCode::InvalidInput, "algebra maps are unital");
    selector = selector && ones == 1;
    map.push_back(static_cast<std::size_t>(at));
  }
  if (selector) return precomposition(std::move(source), std::move(target), std::move(map));
  StructureHom h(std::move(source), std::move(target));
  h.matrix_ = m;
  return h;
}

const std::vector<std::size_t>& StructureHom::atom_map() const {
  if (!atom_map_) throw Error(ErrorCode::UnsupportedHom, "only precomposition homs are supported");
  return *atom_map_;
}

Matrix StructureHom::matrix() const {
  if (!atom_map_) return matrix_;
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(target_.size()), static_cast<Eigen::Index>(source_.size()));
  for (std::size_t t = 0; t < atom_map_->size(); ++t) {
    m(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>((*atom_map_)[t])) = 1.0;
  }
  return m;
}

Fn StructureHom::operator()(const Fn& f) const {
  source_.space().check(f);
  Fn out = Fn::zeros(target_.size());
  if (atom_map_) {
    for (std::size_t t = 0; t < out.size(); ++t) out[t] = f[(*atom_map_)[t]];
    return out;
  }
  for (std::size_t t = 0; t < out.size(); ++t) {
    for (std::size_t s = 0; s < f.size(); ++s) {
      out[t] += matrix_(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(s)) * f[s];
    }
  }
  return out;
}

double compression_constant(const std::vector<std::size_t>& point_map, const finite::FiniteMeasureSpace& source,
                            const finite::FiniteMeasureSpace& target) {
  if (point_map.size() != source.size()) {
    throw Error(ErrorCode::InvalidInput, "point map needs one entry per source atom");
  }
  std::vector<double> mass(target.size(), 0.0);
  for (std::size_t x = 0; x < point_map.size(); ++x) {
    if (point_map[x] >= target.size()) throw Error(ErrorCode::InvalidInput, "point map entry out of range");
    mass[point_map[x]] += source.weight(x);
  }
  double c = 0.0;
  for (std::size_t y = 0; y < mass.size(); ++y) {
    if (mass[y] > 0.0) c = std::max(c, mass[y] / target.weight(y));
  }
  return c;
}

}  // namespace rieszmod::hom
