#include "rieszmod/io/json_io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "rieszmod/error.hpp"

namespace rieszmod::io {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <class F>
auto at_path(const std::string& path, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    if (!e.path().empty()) throw;
    throw Error(e.code(), e.what(), path);
  }
}

const json& field(const json& j, const char* key, const std::string& path) {
  if (!j.is_object()) throw Error(ErrorCode::InvalidInput, "expected an object", path);
  if (!j.contains(key)) throw Error(ErrorCode::InvalidInput, std::string("missing field \"") + key + "\"", path);
  return j.at(key);
}

void only_fields(const json& j, std::initializer_list<const char*> keys, const std::string& path) {
  if (!j.is_object()) throw Error(ErrorCode::InvalidInput, "expected an object", path);
  for (const auto& [key, _] : j.items()) {
    bool known = false;
    for (const char* k : keys) known = known || key == k;
    if (!known) throw Error(ErrorCode::InvalidInput, "unknown field \"" + key + "\"", path + "/" + key);
  }
}

const json& array_at(const json& j, const std::string& path) {
  if (!j.is_array()) throw Error(ErrorCode::InvalidInput, "expected an array", path);
  return j;
}

std::size_t index_from_json(const json& j, const std::string& path) {
  if (!j.is_number_integer() || j.get<long long>() < 0) {
    throw Error(ErrorCode::InvalidInput, "expected a nonnegative integer", path);
  }
  return j.get<std::size_t>();
}

std::vector<double> doubles(const json& j, const std::string& path) {
  std::vector<double> out;
  for (std::size_t i = 0; i < array_at(j, path).size(); ++i) {
    out.push_back(number_from_json(j[i], path + "/" + std::to_string(i)));
  }
  return out;
}

json matrix_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(number(m(i, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json vector_json(const Vector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(number(v(i)));
  return out;
}

json fiber_set_json(const hilbert::FiberSet& s) {
  using Kind = hilbert::FiberSet::Kind;
  switch (s.kind) {
    case Kind::Subspace:
      if (s.basis.cols() == 0) return {{"kind", "zero"}, {"dim", s.basis.rows()}};
      return {{"kind", "subspace"}, {"basis", matrix_json(s.basis.transpose())}};
    case Kind::Box:
      return {{"kind", "box"}, {"lo", vector_json(s.lo)}, {"hi", vector_json(s.hi)}};
    case Kind::Ball:
      return {{"kind", "ball"}, {"center", vector_json(s.center)}, {"radius", number(s.radius)}};
    case Kind::Intersection: {
      json parts = json::array();
      for (const auto& p : s.parts) parts.push_back(fiber_set_json(p));
      return {{"kind", "intersection"}, {"parts", parts}};
    }
  }
  return nullptr;
}

hilbert::FiberSet fiber_set_from_json(const json& j, const std::string& path) {
  const json& kind = field(j, "kind", path);
  if (!kind.is_string()) throw Error(ErrorCode::InvalidInput, "\"kind\" must be a string", path + "/kind");
  const auto k = kind.get<std::string>();
  if (k == "subspace") {
    only_fields(j, {"kind", "basis"}, path);
    const json& rows = array_at(field(j, "basis", path), path + "/basis");
    if (rows.empty()) throw Error(ErrorCode::InvalidInput, "empty basis; use {\"kind\": \"zero\", \"dim\": d}", path);
    const auto d = static_cast<Eigen::Index>(array_at(rows[0], path + "/basis/0").size());
    return hilbert::FiberSet::subspace(
        matrix_at(rows, static_cast<Eigen::Index>(rows.size()), d, path + "/basis").transpose());
  }
  if (k == "box") {
    only_fields(j, {"kind", "lo", "hi"}, path);
    return hilbert::FiberSet::box(vector_at(field(j, "lo", path), path + "/lo"),
                                  vector_at(field(j, "hi", path), path + "/hi"));
  }
  if (k == "ball") {
    only_fields(j, {"kind", "center", "radius"}, path);
    return hilbert::FiberSet::ball(vector_at(field(j, "center", path), path + "/center"),
                                   number_from_json(field(j, "radius", path), path + "/radius"));
  }
  if (k == "intersection") {
    only_fields(j, {"kind", "parts"}, path);
    const json& parts = array_at(field(j, "parts", path), path + "/parts");
    std::vector<hilbert::FiberSet> out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      out.push_back(fiber_set_from_json(parts[i], path + "/parts/" + std::to_string(i)));
    }
    return hilbert::FiberSet::intersection(std::move(out));
  }
  if (k == "zero") {
    only_fields(j, {"kind", "dim"}, path);
    const auto d = static_cast<Eigen::Index>(index_from_json(field(j, "dim", path), path + "/dim"));
    return hilbert::FiberSet::subspace(Matrix::Zero(d, 0));
  }
  throw Error(ErrorCode::InvalidInput, "unknown convex set kind \"" + k + "\"", path + "/kind");
}

}  // namespace

json parse_json(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::InvalidInput, what + ": " + e.what());
  }
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidInput, "cannot read " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_json(buffer.str(), path);
}

json number(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

double number_from_json(const json& j, const std::string& path) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return kInf;
    if (s == "-inf") return -kInf;
  }
  throw Error(ErrorCode::InvalidInput, "expected a number", path);
}

Vector vector_at(const json& j, const std::string& path) {
  const auto xs = doubles(j, path);
  Vector v(static_cast<Eigen::Index>(xs.size()));
  for (std::size_t i = 0; i < xs.size(); ++i) v(static_cast<Eigen::Index>(i)) = xs[i];
  return v;
}

Matrix matrix_at(const json& j, Eigen::Index rows, Eigen::Index cols, const std::string& path) {
  array_at(j, path);
  if (j.empty() && (rows == 0 || cols == 0)) return Matrix::Zero(rows, cols);
  if (static_cast<Eigen::Index>(j.size()) != rows) {
    throw Error(ErrorCode::DimensionMismatch, "expected " + std::to_string(rows) + " rows", path);
  }
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const std::string row_path = path + "/" + std::to_string(i);
    const Vector row = vector_at(j[static_cast<std::size_t>(i)], row_path);
    if (row.size() != cols) {
      throw Error(ErrorCode::DimensionMismatch, "expected " + std::to_string(cols) + " columns", row_path);
    }
    m.row(i) = row.transpose();
  }
  return m;
}

json to_json(const finite::Fn& f) {
  json out = json::array();
  for (std::size_t i = 0; i < f.size(); ++i) out.push_back(number(f[i]));
  return out;
}

finite::Fn fn_from_json(const json& j, const std::string& path) { return finite::Fn(doubles(j, path)); }

json to_json(const finite::FiniteMeasureSpace& space) {
  json w = json::array(), aux = json::array();
  for (double x : space.weights()) w.push_back(number(x));
  for (double x : space.aux_weights()) aux.push_back(number(x));
  return {{"atoms", space.atoms()}, {"weights", w}, {"aux_weights", aux}};
}

finite::FiniteMeasureSpace space_from_json(const json& j, const std::string& path) {
  only_fields(j, {"atoms", "weights", "aux_weights"}, path);
  const json& atoms = array_at(field(j, "atoms", path), path + "/atoms");
  std::vector<std::string> names;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (!atoms[i].is_string()) {
      throw Error(ErrorCode::InvalidInput, "atom names must be strings", path + "/atoms/" + std::to_string(i));
    }
    names.push_back(atoms[i].get<std::string>());
  }
  auto weights = doubles(field(j, "weights", path), path + "/weights");
  std::optional<std::vector<double>> aux;
  if (j.contains("aux_weights")) aux = doubles(j["aux_weights"], path + "/aux_weights");
  return at_path(path, [&] { return finite::FiniteMeasureSpace(std::move(names), std::move(weights), aux); });
}

json to_json(const finite::FiniteFStructure& s) {
  json out = {{"space", to_json(s.space())}, {"U", finite::to_json(s.u())}, {"V", finite::to_json(s.v())}};
  if (!(s.v_support() == finite::Fn::ones(s.size()))) out["V_support"] = to_json(s.v_support());
  return out;
}

finite::FiniteFStructure structure_from_json(const json& j, const std::string& path) {
  only_fields(j, {"space", "U", "V", "V_support"}, path);
  auto space = space_from_json(field(j, "space", path), path + "/space");
  const auto u = at_path(path + "/U", [&] { return finite::space_type_from_json(field(j, "U", path)); });
  const auto v = at_path(path + "/V", [&] { return finite::space_type_from_json(field(j, "V", path)); });
  std::optional<finite::Fn> support;
  if (j.contains("V_support")) support = fn_from_json(j["V_support"], path + "/V_support");
  return at_path(path, [&] { return finite::FiniteFStructure(std::move(space), u, v, support); });
}

json to_json(const module::FiberModule& m) {
  json fibers = json::array();
  for (const auto& f : m.fibers()) fibers.push_back({{"dim", f.dim()}, {"norm", module::to_json(f)}});
  return {{"structure", to_json(m.structure())}, {"fibers", fibers}};
}

module::ModulePtr module_from_json(const json& j, const std::string& path) {
  only_fields(j, {"structure", "fibers"}, path);
  auto structure = structure_from_json(field(j, "structure", path), path + "/structure");
  const json& fibers = array_at(field(j, "fibers", path), path + "/fibers");
  std::vector<module::FiberNorm> norms;
  for (std::size_t i = 0; i < fibers.size(); ++i) {
    const std::string p = path + "/fibers/" + std::to_string(i);
    only_fields(fibers[i], {"dim", "norm"}, p);
    const std::size_t dim = index_from_json(field(fibers[i], "dim", p), p + "/dim");
    const json norm = fibers[i].contains("norm") ? fibers[i]["norm"] : json{{"lp", 2.0}};
    norms.push_back(at_path(p + "/norm", [&] { return module::fiber_norm_from_json(dim, norm); }));
  }
  return at_path(path + "/fibers", [&] { return module::make_module(std::move(structure), std::move(norms)); });
}

json to_json(const module::ModuleElement& v) {
  json vs = json::array();
  for (const auto& x : v.vectors()) vs.push_back(vector_json(x));
  return {{"vectors", vs}};
}

module::ModuleElement element_from_json(const json& j, const module::ModulePtr& m, const std::string& path) {
  only_fields(j, {"vectors"}, path);
  const json& vs = array_at(field(j, "vectors", path), path + "/vectors");
  if (vs.size() != m->size()) throw Error(ErrorCode::DimensionMismatch, "one vector per atom", path + "/vectors");
  std::vector<Vector> out;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    const std::string p = path + "/vectors/" + std::to_string(i);
    out.push_back(vector_at(vs[i], p));
    if (static_cast<std::size_t>(out.back().size()) != m->dim(i)) {
      throw Error(ErrorCode::DimensionMismatch, "vector does not match the fiber dimension", p);
    }
  }
  return module::ModuleElement(m, std::move(out));
}

json to_json(const hom::HomElement& t) {
  json ms = json::array();
  for (const auto& m : t.matrices()) ms.push_back(matrix_json(m));
  json out = {{"matrices", ms}};
  if (!t.is_untwisted()) out["source_atoms"] = t.source_atoms();
  return out;
}

hom::HomElement hom_from_json(const json& j, const module::ModulePtr& source, const module::ModulePtr& target,
                              const std::string& path) {
  only_fields(j, {"matrices", "source_atoms"}, path);
  const json& ms = array_at(field(j, "matrices", path), path + "/matrices");
  if (ms.size() != target->size()) throw Error(ErrorCode::DimensionMismatch, "one matrix per target atom", path + "/matrices");
  std::optional<std::vector<std::size_t>> map;
  if (j.contains("source_atoms")) {
    const json& a = array_at(j["source_atoms"], path + "/source_atoms");
    map.emplace();
    for (std::size_t i = 0; i < a.size(); ++i) {
      map->push_back(index_from_json(a[i], path + "/source_atoms/" + std::to_string(i)));
    }
    if (map->size() != target->size()) {
      throw Error(ErrorCode::InvalidInput, "one source atom per target atom", path + "/source_atoms");
    }
    for (std::size_t i = 0; i < map->size(); ++i) {
      if ((*map)[i] >= source->size()) {
        throw Error(ErrorCode::InvalidInput, "source atom out of range", path + "/source_atoms/" + std::to_string(i));
      }
    }
  } else if (source->size() != target->size()) {
    throw Error(ErrorCode::SpaceMismatch, "modules over different spaces need \"source_atoms\"", path);
  }
  std::vector<Matrix> out;
  for (std::size_t t = 0; t < ms.size(); ++t) {
    const std::size_t s = map ? (*map)[t] : t;
    out.push_back(matrix_at(ms[t], static_cast<Eigen::Index>(target->dim(t)), static_cast<Eigen::Index>(source->dim(s)),
                            path + "/matrices/" + std::to_string(t)));
  }
  return at_path(path, [&] { return hom::HomElement(source, target, std::move(out), map); });
}

json to_json(const hilbert::ConvexSet& c) {
  json fibers = json::array();
  for (const auto& f : c.fibers) fibers.push_back(fiber_set_json(f));
  return {{"fibers", fibers}};
}

hilbert::ConvexSet convex_set_from_json(const json& j, const std::string& path) {
  only_fields(j, {"fibers"}, path);
  const json& fibers = array_at(field(j, "fibers", path), path + "/fibers");
  hilbert::ConvexSet out;
  for (std::size_t i = 0; i < fibers.size(); ++i) {
    out.fibers.push_back(fiber_set_from_json(fibers[i], path + "/fibers/" + std::to_string(i)));
  }
  return out;
}

json to_json(const constructions::Graph& g) {
  json edges = json::array();
  for (const auto& e : g.edges) edges.push_back({{"u", g.vertices[e.u]}, {"v", g.vertices[e.v]}, {"w", number(e.w)}});
  return {{"vertices", g.vertices}, {"edges", edges}};
}

constructions::Graph graph_from_json(const json& j, const std::string& path) {
  only_fields(j, {"vertices", "edges"}, path);
  constructions::Graph g;
  const json& vs = array_at(field(j, "vertices", path), path + "/vertices");
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    const std::string p = path + "/vertices/" + std::to_string(i);
    if (!vs[i].is_string()) throw Error(ErrorCode::InvalidInput, "vertex names must be strings", p);
    if (!index.emplace(vs[i].get<std::string>(), i).second) throw Error(ErrorCode::InvalidInput, "duplicate vertex", p);
    g.vertices.push_back(vs[i].get<std::string>());
  }
  const json& es = array_at(field(j, "edges", path), path + "/edges");
  for (std::size_t i = 0; i < es.size(); ++i) {
    const std::string p = path + "/edges/" + std::to_string(i);
    only_fields(es[i], {"u", "v", "w"}, p);
    const auto end = [&](const char* key) {
      const json& x = field(es[i], key, p);
      if (!x.is_string() || !index.count(x.get<std::string>())) {
        throw Error(ErrorCode::InvalidInput, "edge end must name a vertex", p + "/" + key);
      }
      return index.at(x.get<std::string>());
    };
    const double w = es[i].contains("w") ? number_from_json(es[i]["w"], p + "/w") : 1.0;
    g.edges.push_back({end("u"), end("v"), w});
  }
  at_path(path, [&] { g.validate(); });
  return g;
}

}  // namespace rieszmod::io
