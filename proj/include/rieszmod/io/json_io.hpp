#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "rieszmod/constructions/generated.hpp"
#include "rieszmod/finite/structure.hpp"
#include "rieszmod/hilbert/hilbert.hpp"
#include "rieszmod/hom/hom.hpp"
#include "rieszmod/module/fiber_module.hpp"

namespace rieszmod::io {

using nlohmann::json;

/// Parse failures become InvalidInput errors carrying the JSON pointer of
/// the offending value.
json read_json_file(const std::string& path);
json parse_json(const std::string& text, const std::string& what);

/// A finite number, or "inf" / "-inf".
json number(double x);
double number_from_json(const json& j, const std::string& path);

json to_json(const finite::Fn& f);
finite::Fn fn_from_json(const json& j, const std::string& path = "");

/// { "atoms", "weights", "aux_weights" }; aux_weights optional.
json to_json(const finite::FiniteMeasureSpace& space);
finite::FiniteMeasureSpace space_from_json(const json& j, const std::string& path = "");

/// { "space", "U", "V", optional "V_support" }.
json to_json(const finite::FiniteFStructure& s);
finite::FiniteFStructure structure_from_json(const json& j, const std::string& path = "");

/// { "structure", "fibers": [ { "dim", "norm" } ] }.
json to_json(const module::FiberModule& m);
module::ModulePtr module_from_json(const json& j, const std::string& path = "");

/// { "vectors": [[...], ...] }.
json to_json(const module::ModuleElement& v);
module::ModuleElement element_from_json(const json& j, const module::ModulePtr& m, const std::string& path = "");

/// { "matrices": [...], optional "source_atoms" }.
json to_json(const hom::HomElement& t);
hom::HomElement hom_from_json(const json& j, const module::ModulePtr& source, const module::ModulePtr& target,
                              const std::string& path = "");

/// { "fibers": [ {"kind": "subspace", "basis": [[...]]} | {"kind": "box", "lo", "hi"}
///   | {"kind": "ball", "center", "radius"} | {"kind": "intersection", "parts": [...]}
///   | {"kind": "zero", "dim"} ] }.
/// Subspace bases list spanning vectors, one per row.
json to_json(const hilbert::ConvexSet& c);
hilbert::ConvexSet convex_set_from_json(const json& j, const std::string& path = "");

/// { "vertices": [names], "edges": [ {"u", "v", "w"} ] }; w defaults to 1.
json to_json(const constructions::Graph& g);
constructions::Graph graph_from_json(const json& j, const std::string& path = "");

/// Matrices sized from the module dims (rows, cols) with JSON rows.
Vector vector_at(const json& j, const std::string& path);
Matrix matrix_at(const json& j, Eigen::Index rows, Eigen::Index cols, const std::string& path);

}  // namespace rieszmod::io
