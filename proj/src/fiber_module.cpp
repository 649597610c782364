#include "rieszmod/module/fiber_module.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "rieszmod/error.hpp"

namespace rieszmod::module {

namespace {

void require_dims(const FiberModule& m, const std::vector<Vector>& vectors) {
  if (vectors.size() != m.size()) {
    throw Error(ErrorCode::DimensionMismatch, "element needs one vector per atom");
  }
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (static_cast<std::size_t>(vectors[i].size()) != m.dim(i)) {
      throw Error(ErrorCode::DimensionMismatch, "vector length does not match the fiber dimension",
                  "/vectors/" + std::to_string(i));
    }
  }
}

template <class Op>
ModuleElement zip(const ModuleElement& a, const ModuleElement& b, Op op) {
  require_same_module(a, b);
  std::vector<Vector> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = op(a.at(i), b.at(i));
  return ModuleElement(a.module_ptr(), std::move(out));
}

Matrix reduced(const Matrix& span) {
  if (span.cols() == 0) return span;
  return select_columns(span, pivot_columns(span));
}

}  // namespace

FiberModule::FiberModule(FiniteFStructure structure, std::vector<FiberNorm> fibers)
    : structure_(std::move(structure)), fibers_(std::move(fibers)) {
  if (fibers_.size() != structure_.size()) {
    throw Error(ErrorCode::DimensionMismatch, "module needs one fiber per atom", "/fibers");
  }
}

std::vector<std::size_t> FiberModule::dims() const {
  std::vector<std::size_t> out;
  out.reserve(fibers_.size());
  for (const auto& f : fibers_) out.push_back(f.dim());
  return out;
}

ModulePtr make_module(FiniteFStructure structure, std::vector<FiberNorm> fibers) {
  return std::make_shared<const FiberModule>(std::move(structure), std::move(fibers));
}

bool same_module(const ModulePtr& a, const ModulePtr& b) { return a == b || (a && b && *a == *b); }

ModuleElement::ModuleElement(ModulePtr module, std::vector<Vector> vectors)
    : module_(std::move(module)), vectors_(std::move(vectors)) {
  require_dims(*module_, vectors_);
}

ModuleElement ModuleElement::zero(ModulePtr module) {
  std::vector<Vector> vs;
  for (std::size_t d : module->dims()) vs.push_back(Vector::Zero(static_cast<Eigen::Index>(d)));
  return ModuleElement(std::move(module), std::move(vs));
}

void require_same_module(const ModuleElement& a, const ModuleElement& b) {
  if (!same_module(a.module_ptr(), b.module_ptr())) {
    throw Error(ErrorCode::ModuleMismatch, "elements belong to different modules");
  }
}

ModuleElement operator+(const ModuleElement& a, const ModuleElement& b) {
  return zip(a, b, [](const Vector& x, const Vector& y) -> Vector { return x + y; });
}

ModuleElement operator-(const ModuleElement& a, const ModuleElement& b) {
  return zip(a, b, [](const Vector& x, const Vector& y) -> Vector { return x - y; });
}

ModuleElement operator-(const ModuleElement& a) { return -1.0 * a; }

ModuleElement operator*(double s, const ModuleElement& v) {
  std::vector<Vector> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = s * v.at(i);
  return ModuleElement(v.module_ptr(), std::move(out));
}

ModuleElement operator*(const Fn& u, const ModuleElement& v) {
  v.module().structure().space().check(u);
  std::vector<Vector> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = u[i] * v.at(i);
  return ModuleElement(v.module_ptr(), std::move(out));
}

bool operator==(const ModuleElement& a, const ModuleElement& b) {
  if (!same_module(a.module_ptr(), b.module_ptr())) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a.at(i) != b.at(i)) return false;
  }
  return true;
}

bool approx_equal(const ModuleElement& a, const ModuleElement& b, double tol) {
  if (!same_module(a.module_ptr(), b.module_ptr())) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a.at(i).size() == 0) continue;
    const double scale = 1.0 + std::max(a.at(i).cwiseAbs().maxCoeff(), b.at(i).cwiseAbs().maxCoeff());
    if ((a.at(i) - b.at(i)).cwiseAbs().maxCoeff() > tol * scale) return false;
  }
  return true;
}

Fn pointwise_norm(const ModuleElement& v) {
  Fn out = Fn::zeros(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v.module().fiber(i)(v.at(i));
  return out;
}

double module_distance(const ModuleElement& v, const ModuleElement& w) {
  return v.module().structure().d_v0(pointwise_norm(v - w));
}

finite::Idem zero_indicator(const ModuleElement& v) {
  Fn out = Fn::zeros(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v.at(i).isZero(0.0) ? 1.0 : 0.0;
  return finite::Idem(std::move(out));
}

AdmissibleFamily::AdmissibleFamily(finite::Partition partition, std::vector<ModuleElement> elements)
    : partition_(std::move(partition)), elements_(std::move(elements)) {
  if (partition_.size() != elements_.size()) {
    throw Error(ErrorCode::InvalidInput, "admissible family needs one element per block");
  }
  if (elements_.empty()) throw Error(ErrorCode::NotAPartition, "empty family");
  if (!(partition_.of().value() == Fn::ones(partition_.of().value().size()))) {
    throw Error(ErrorCode::NotAPartition, "blocks must partition the unit");
  }
  for (const auto& e : elements_) require_same_module(elements_.front(), e);
  elements_.front().module().structure().space().check(partition_.of().value());
}

ModuleElement glue(const AdmissibleFamily& family) {
  const auto& first = family.elements().front();
  std::vector<Vector> out(first.vectors());
  for (std::size_t n = 0; n < family.elements().size(); ++n) {
    const Fn& block = family.partition()[n];
    for (std::size_t i = 0; i < out.size(); ++i) {
      if (block[i] == 1.0) out[i] = family.elements()[n].at(i);
    }
  }
  return ModuleElement(first.module_ptr(), std::move(out));
}

Fn glue_scalar(const finite::Partition& partition, const std::vector<Fn>& values) {
  if (partition.size() != values.size()) {
    throw Error(ErrorCode::InvalidInput, "glueing needs one function per block");
  }
  if (values.empty()) throw Error(ErrorCode::NotAPartition, "empty family");
  const Fn& unit = partition.of().value();
  if (!(unit == Fn::ones(unit.size()))) throw Error(ErrorCode::NotAPartition, "blocks must partition the unit");
  Fn pos = Fn::zeros(unit.size()), neg = Fn::zeros(unit.size());
  for (std::size_t n = 0; n < values.size(); ++n) {
    require_same_size(unit, values[n]);
    pos = finite::join(pos, partition[n] * finite::join(values[n], zero_like(unit)));
    neg = finite::join(neg, partition[n] * finite::join(-values[n], zero_like(unit)));
  }
  return pos - neg;
}

Submodule::Submodule(ModulePtr module, const std::vector<Matrix>& spans) : module_(std::move(module)) {
  if (spans.size() != module_->size()) {
    throw Error(ErrorCode::DimensionMismatch, "submodule needs one span per atom");
  }
  bases_.reserve(spans.size());
  for (std::size_t i = 0; i < spans.size(); ++i) {
    const Matrix& s = spans[i];
    if (static_cast<std::size_t>(s.rows()) != module_->dim(i) && s.cols() > 0) {
      throw Error(ErrorCode::DimensionMismatch, "span does not fit the fiber", "/spans/" + std::to_string(i));
    }
    bases_.push_back(s.cols() > 0 ? reduced(s) : Matrix(static_cast<Eigen::Index>(module_->dim(i)), 0));
  }
}

Submodule Submodule::zero(ModulePtr module) {
  const std::size_t n = module->size();
  return Submodule(std::move(module), std::vector<Matrix>(n));
}

Submodule Submodule::whole(ModulePtr module) {
  return restricted(module, Fn::ones(module->size()));
}

Submodule Submodule::restricted(ModulePtr module, const Fn& u) {
  module->structure().space().check(u);
  std::vector<Matrix> spans;
  for (std::size_t i = 0; i < module->size(); ++i) {
    const auto d = static_cast<Eigen::Index>(module->dim(i));
    spans.push_back(u[i] != 0.0 ? Matrix(Matrix::Identity(d, d)) : Matrix(d, 0));
  }
  return Submodule(std::move(module), spans);
}

Submodule Submodule::spanned_by(ModulePtr module, const std::vector<ModuleElement>& generators) {
  std::vector<Matrix> spans;
  for (std::size_t i = 0; i < module->size(); ++i) {
    Matrix s(static_cast<Eigen::Index>(module->dim(i)), static_cast<Eigen::Index>(generators.size()));
    for (std::size_t g = 0; g < generators.size(); ++g) {
      if (!same_module(generators[g].module_ptr(), module)) {
        throw Error(ErrorCode::ModuleMismatch, "generator belongs to a different module");
      }
      s.col(static_cast<Eigen::Index>(g)) = generators[g].at(i);
    }
    spans.push_back(std::move(s));
  }
  return Submodule(std::move(module), spans);
}

std::vector<std::size_t> Submodule::dims() const {
  std::vector<std::size_t> out;
  for (const auto& b : bases_) out.push_back(static_cast<std::size_t>(b.cols()));
  return out;
}

bool Submodule::contains(const ModuleElement& v, double tol) const {
  if (!same_module(v.module_ptr(), module_)) return false;
  for (std::size_t i = 0; i < bases_.size(); ++i) {
    const Vector& x = v.at(i);
    if (x.size() == 0) continue;
    const double scale = 1.0 + x.norm();
    if (bases_[i].cols() == 0) {
      if (x.norm() > tol * scale) return false;
      continue;
    }
    if (least_squares(bases_[i], x).residual > tol * scale) return false;
  }
  return true;
}

Submodule operator+(const Submodule& a, const Submodule& b) {
  if (!same_module(a.module_ptr(), b.module_ptr())) {
    throw Error(ErrorCode::ModuleMismatch, "submodules of different modules");
  }
  std::vector<Matrix> spans;
  for (std::size_t i = 0; i < a.dims().size(); ++i) {
    Matrix s(a.basis(i).rows(), a.basis(i).cols() + b.basis(i).cols());
    s << a.basis(i), b.basis(i);
    spans.push_back(std::move(s));
  }
  return Submodule(a.module_ptr(), spans);
}

bool is_direct_sum(const Submodule& a, const Submodule& b) {
  const Submodule s = a + b;
  const auto da = a.dims(), db = b.dims(), ds = s.dims();
  for (std::size_t i = 0; i < ds.size(); ++i) {
    if (ds[i] != da[i] + db[i]) return false;
  }
  return true;
}

Fn quotient_norm(const ModuleElement& v, const Submodule& n) {
  if (!same_module(v.module_ptr(), n.module_ptr())) {
    throw Error(ErrorCode::DimensionMismatch, "submodule does not live in the element's module");
  }
  Fn out = Fn::zeros(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const FiberNorm& norm = v.module().fiber(i);
    const Matrix& b = n.basis(i);
    out[i] = b.cols() == 0 ? norm(v.at(i)) : std::max(0.0, norm.min_affine(v.at(i), b).value);
  }
  return out;
}

std::vector<DimensionPart> dimensional_decomposition(const FiberModule& module) {
  std::map<std::size_t, Fn> parts;
  for (std::size_t i = 0; i < module.size(); ++i) {
    auto [it, _] = parts.try_emplace(module.dim(i), Fn::zeros(module.size()));
    it->second[i] = 1.0;
  }
  std::vector<DimensionPart> out;
  for (auto& [d, part] : parts) out.push_back({d, std::move(part)});
  return out;
}

bool independence_check(const std::vector<ModuleElement>& vs, const Fn& u) {
  for (const auto& v : vs) require_same_module(vs.front(), v);
  if (vs.empty()) return true;
  const FiberModule& m = vs.front().module();
  m.structure().space().check(u);
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (u[i] == 0.0) continue;
    if (vs.size() > m.dim(i)) return false;
    Matrix s(static_cast<Eigen::Index>(m.dim(i)), static_cast<Eigen::Index>(vs.size()));
    for (std::size_t k = 0; k < vs.size(); ++k) s.col(static_cast<Eigen::Index>(k)) = vs[k].at(i);
    if (numerical_rank(s) != vs.size()) return false;
  }
  return true;
}

std::vector<ModuleElement> local_basis(const ModulePtr& module, const Fn& part) {
  module->structure().space().check(part);
  std::size_t n = 0;
  bool seen = false;
  for (std::size_t i = 0; i < module->size(); ++i) {
    if (part[i] == 0.0) continue;
    if (seen && module->dim(i) != n) {
      throw Error(ErrorCode::DimensionMismatch, "fibers on the part have different dimensions");
    }
    n = module->dim(i);
    seen = true;
  }
  std::vector<ModuleElement> out;
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<Vector> vs;
    for (std::size_t i = 0; i < module->size(); ++i) {
      Vector x = Vector::Zero(static_cast<Eigen::Index>(module->dim(i)));
      if (part[i] != 0.0) x(static_cast<Eigen::Index>(k)) = 1.0;
      vs.push_back(std::move(x));
    }
    out.emplace_back(module, std::move(vs));
  }
  return out;
}

}  // namespace rieszmod::module
