#include "rieszmod/cli/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <map>
#include <optional>

#include "rieszmod/constructions/generated.hpp"
#include "rieszmod/constructions/pushforward.hpp"
#include "rieszmod/error.hpp"
#include "rieszmod/finite/fstructure_laws.hpp"
#include "rieszmod/finite/sampling.hpp"
#include "rieszmod/finite/stone.hpp"
#include "rieszmod/hilbert/hilbert.hpp"
#include "rieszmod/hom/dual.hpp"
#include "rieszmod/io/json_io.hpp"
#include "rieszmod/module/sampling.hpp"

namespace rieszmod::cli {

namespace {

using io::json;
using module::ModuleElement;
using module::ModulePtr;

struct Config {
  std::string command;
  std::optional<std::string> seed_text;
  std::size_t samples = 0;
  std::optional<double> tol;
  std::string structure, module, element, set, graph, target, functional;
  std::string p_text = "2", fn_text, map_text, generators_text;
  bool faithful = false;
};

struct Outcome {
  json report;
  std::vector<std::string> failures;
};

std::uint64_t parse_seed(const std::string& text, const std::string& where) {
  try {
    std::size_t used = 0;
    if (!text.empty() && text[0] != '-') {
      const unsigned long long s = std::stoull(text, &used, 0);
      if (used == text.size()) return s;
    }
  } catch (const std::exception&) {
  }
  throw Error(ErrorCode::InvalidInput, where + " must be a 64-bit unsigned integer", where);
}

std::uint64_t resolve_seed(const Config& c) {
  if (c.seed_text) return parse_seed(*c.seed_text, "--seed");
  if (const char* env = std::getenv("RIESZMOD_SEED")) return parse_seed(env, "RIESZMOD_SEED");
  return 0;
}

void require(const std::string& value, const char* flag) {
  if (value.empty()) throw Error(ErrorCode::InvalidInput, std::string(flag) + " is required", flag);
}

double tolerance(const Config& c, double fallback) { return c.tol.value_or(fallback); }

void check(Outcome& o, const std::string& name, bool ok, json detail = nullptr) {
  o.report["checks"][name] = {{"passed", ok}, {"detail", std::move(detail)}};
  if (!ok) o.failures.push_back(name);
}

json indicator_json(const finite::Fn& f) {
  json out = json::array();
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i] == 0.0 || f[i] == 1.0) {
      out.push_back(static_cast<int>(f[i]));
    } else {
      out.push_back(io::number(f[i]));
    }
  }
  return out;
}

double max_abs_diff(const finite::Fn& a, const finite::Fn& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

Outcome laws(const Config& c, Rng& rng) {
  require(c.structure, "--structure");
  const auto structure = io::structure_from_json(io::read_json_file(c.structure));
  const std::size_t samples = c.samples == 0 ? 1000 : c.samples;
  const auto triples = finite::random_triples(rng, samples, structure.size());
  const LawReport algebra = order::riesz_law_suite(triples);
  const LawReport metric = finite::check_fstructure_laws(structure, triples);
  Outcome o;
  o.report["spec_refs"] = {"basic properties of Riesz spaces", "basic properties of f-algebras",
                           "metric f-structure axioms"};
  o.report["samples"] = samples;
  o.report["laws"] = to_json(algebra)["laws"];
  o.report["structure_laws"] = to_json(metric)["laws"];
  o.report["passed"] = algebra.passed_count();
  o.report["total"] = algebra.laws().size();
  o.report["structure_passed"] = metric.passed_count();
  o.report["structure_total"] = metric.laws().size();
  for (const auto& l : algebra.laws()) {
    if (!l.passed) o.failures.push_back(l.id);
  }
  for (const auto& l : metric.laws()) {
    if (!l.passed) o.failures.push_back(l.id);
  }
  return o;
}

Outcome cotangent(const Config& c, Rng& rng) {
  require(c.graph, "--graph");
  require(c.fn_text, "--fn");
  const auto graph = io::graph_from_json(io::read_json_file(c.graph), "");
  const double p = io::number_from_json(io::parse_json(c.p_text, "--p"), "--p");
  const finite::Fn f = io::fn_from_json(io::parse_json(c.fn_text, "--fn"), "--fn");
  if (f.size() != graph.vertices.size()) throw Error(ErrorCode::DimensionMismatch, "one value per vertex", "--fn");
  const auto structure =
      c.structure.empty()
          ? finite::FiniteFStructure(finite::FiniteMeasureSpace(graph.vertices, std::vector<double>(graph.vertices.size(), 1.0)),
                                     finite::SpaceType::linf(), finite::SpaceType::lp(p))
          : io::structure_from_json(io::read_json_file(c.structure));
  const auto psi = constructions::SublinearMap::graph_gradient(graph, p);
  const auto gen = constructions::generate_module(psi, structure);
  Vector fv(static_cast<Eigen::Index>(f.size()));
  for (std::size_t i = 0; i < f.size(); ++i) fv(static_cast<Eigen::Index>(i)) = f[i];
  const ModuleElement df = gen(fv);
  const finite::Fn norm = module::pointwise_norm(df);
  const finite::Fn expected = psi(fv);
  Outcome o;
  o.report["spec_refs"] = {"module generated by a sublinear map", "cotangent module"};
  o.report["|df|"] = io::to_json(norm);
  o.report["psi"] = io::to_json(expected);
  o.report["df"] = io::to_json(df);
  o.report["d(|df|,0)"] = io::number(structure.d_v0(norm));
  o.report["module"] = io::to_json(*gen.module());
  const double err = max_abs_diff(norm, expected);
  check(o, "norm_equals_psi", err <= tolerance(c, 1e-9), io::number(err));
  if (c.faithful) {
    o.report["spec_refs"].push_back("equivalence-class construction of the generated module");
    const auto r = constructions::faithful_replay(psi, gen, rng, c.samples == 0 ? 200 : c.samples);
    o.report["faithful"] = {{"sequences", r.sequences},
                            {"max_norm_error", io::number(r.max_norm_error)},
                            {"norms_match", r.norms_match},
                            {"equivalence_matches", r.equivalence_matches},
                            {"operations_match", r.operations_match},
                            {"surjective", r.surjective}};
    check(o, "faithful_replay", r.ok());
  }
  return o;
}

Outcome project(const Config& c, Rng& rng) {
  require(c.module, "--module");
  require(c.element, "--element");
  require(c.set, "--set");
  const ModulePtr m = io::module_from_json(io::read_json_file(c.module));
  const hilbert::HilbertModule h(m, rng.next());
  const ModuleElement v = io::element_from_json(io::read_json_file(c.element), m);
  const auto set = io::convex_set_from_json(io::read_json_file(c.set));
  const ModuleElement p = hilbert::project_convex(v, set);
  const finite::Fn dist = module::pointwise_norm(v - p);
  Outcome o;
  o.report["spec_refs"] = {"projection onto closed convex glueing-closed sets"};
  o.report["projection"] = io::to_json(p);
  o.report["|v-C|"] = io::to_json(dist);
  o.report["d(|v-C|,0)"] = io::number(m->structure().d_v0(dist));
  check(o, "in_set", hilbert::contains(set, p, 1e-8));
  // First-order condition: (v - P) . (q - P) <= 0 for q in C.
  const double tol = tolerance(c, 1e-8);
  double worst = 0.0;
  const std::size_t samples = c.samples == 0 ? 100 : c.samples;
  for (std::size_t k = 0; k < samples; ++k) {
    const ModuleElement q = hilbert::project_convex(module::random_element(rng, m, 10.0), set);
    const finite::Fn dot = hilbert::pointwise_inner(v - p, q - p);
    const finite::Fn a = module::pointwise_norm(v - p), b = module::pointwise_norm(q - p);
    for (std::size_t i = 0; i < dot.size(); ++i) worst = std::max(worst, dot[i] / (1.0 + a[i] * b[i]));
  }
  check(o, "first_order", worst <= tol, io::number(worst));
  return o;
}

Outcome decompose(const Config& c, Rng&) {
  require(c.module, "--module");
  const ModulePtr m = io::module_from_json(io::read_json_file(c.module));
  const auto parts = module::dimensional_decomposition(*m);
  Outcome o;
  o.report["spec_refs"] = {"dimensional decomposition", "well-posedness of local dimension"};
  json out = json::array();
  finite::Fn total = finite::Fn::zeros(m->size());
  bool independent = true;
  for (const auto& part : parts) {
    out.push_back({{"n", part.dim}, {"D", indicator_json(part.part)}});
    for (std::size_t i = 0; i < total.size(); ++i) total[i] += part.part[i];
    if (part.dim > 0) independent = independent && module::independence_check(module::local_basis(m, part.part), part.part);
  }
  o.report["decomposition"] = out;
  check(o, "partition_of_unit", total == finite::Fn::ones(m->size()));
  check(o, "local_bases_independent", independent);
  return o;
}

Outcome dual(const Config& c, Rng& rng) {
  require(c.module, "--module");
  const ModulePtr m = io::module_from_json(io::read_json_file(c.module));
  const ModulePtr d = hom::dual_module(m);
  const auto system = finite::DualSystem::standard(m->structure());
  const auto embed = hom::bidual_embed(m);
  Outcome o;
  o.report["spec_refs"] = {"dual module", "isometric bidual embedding", "norming functionals from Hahn-Banach"};
  o.report["dual"] = io::to_json(*d);
  o.report["reflexive"] = embed.reflexive;
  const double tol = tolerance(c, 1e-9);
  double worst = 0.0;
  const std::size_t samples = c.samples == 0 ? 1000 : c.samples;
  for (std::size_t k = 0; k < samples; ++k) {
    const ModuleElement v = module::random_element(rng, m);
    const finite::Fn a = module::pointwise_norm(embed.j(v)), b = module::pointwise_norm(v);
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]) / (1.0 + b[i]));
  }
  check(o, "bidual_isometry", worst <= tol, io::number(worst));
  check(o, "bidual_onto", embed.reflexive);
  if (!c.element.empty()) {
    const ModuleElement v = io::element_from_json(io::read_json_file(c.element), m);
    const ModuleElement omega = hom::norming_functional(v);
    const finite::Fn norm = module::pointwise_norm(omega), nv = module::pointwise_norm(v);
    const finite::Fn pair = hom::pairing(omega, v);
    o.report["norming_functional"] = io::to_json(omega);
    o.report["|omega|"] = io::to_json(norm);
    o.report["d_W(|omega|,0)"] = io::number(system.w_structure().d_v0(norm));
    o.report["<omega,v>"] = io::to_json(pair);
    o.report["|v|"] = io::to_json(nv);
    finite::Fn support = finite::Fn::zeros(nv.size());
    for (std::size_t i = 0; i < nv.size(); ++i) support[i] = nv[i] > 0.0 ? 1.0 : 0.0;
    check(o, "norming_pairing", max_abs_diff(pair, nv) <= tol * (1.0 + *std::max_element(nv.begin(), nv.end())));
    check(o, "norming_norm", max_abs_diff(norm, support) <= tol);
  }
  if (!c.target.empty()) {
    require(c.functional, "--hom");
    const ModulePtr n = io::module_from_json(io::read_json_file(c.target));
    const auto t = io::hom_from_json(io::read_json_file(c.functional), m, n);
    const finite::Fn norm = hom::hom_norm(t);
    o.report["|T|"] = io::to_json(norm);
    o.report["d_W(|T|,0)"] = io::number(system.w_structure().d_v0(norm));
  }
  return o;
}

Outcome pushforward(const Config& c, Rng& rng) {
  require(c.module, "--module");
  require(c.map_text, "--map");
  const ModulePtr m = io::module_from_json(io::read_json_file(c.module));
  const json map_json = io::parse_json(c.map_text, "--map");
  if (!map_json.is_array()) throw Error(ErrorCode::InvalidInput, "--map must be an array of atom indices", "--map");
  std::vector<std::size_t> map;
  for (const auto& x : map_json) {
    if (!x.is_number_integer() || x.get<long long>() < 0) {
      throw Error(ErrorCode::InvalidInput, "--map entries must be nonnegative integers", "--map");
    }
    map.push_back(x.get<std::size_t>());
  }
  const auto target =
      c.target.empty()
          ? finite::FiniteFStructure(finite::FiniteMeasureSpace::uniform(map.size()), m->structure().u(), m->structure().v())
          : io::structure_from_json(io::read_json_file(c.target));
  const auto phi = hom::StructureHom::precomposition(m->structure(), target, map);
  const auto pf = constructions::pushforward_module(phi, m);
  Outcome o;
  o.report["spec_refs"] = {"pushforward module", "pointwise norm of the pushforward"};
  o.report["module"] = io::to_json(*pf.module);
  o.report["map"] = io::to_json(pf.map);
  double worst = 0.0;
  const std::size_t samples = c.samples == 0 ? 1000 : c.samples;
  for (std::size_t k = 0; k < samples; ++k) {
    const ModuleElement v = module::random_element(rng, m);
    worst = std::max(worst, max_abs_diff(module::pointwise_norm(pf.map(v)), phi(module::pointwise_norm(v))));
  }
  check(o, "pointwise_norm_pushed", worst <= tolerance(c, 0.0), io::number(worst));
  if (!c.element.empty()) {
    const ModuleElement v = io::element_from_json(io::read_json_file(c.element), m);
    const ModuleElement w = pf.map(v);
    o.report["pushed"] = io::to_json(w);
    o.report["|pushed|"] = io::to_json(module::pointwise_norm(w));
  }
  return o;
}

Outcome hahn_banach(const Config& c, Rng& rng) {
  require(c.module, "--module");
  require(c.functional, "--functional");
  const ModulePtr m = io::module_from_json(io::read_json_file(c.module));
  const json f = io::read_json_file(c.functional);
  for (const auto& [key, _] : f.items()) {
    if (key != "basis" && key != "values" && key != "gauge") {
      throw Error(ErrorCode::InvalidInput, "unknown field \"" + key + "\"", "/" + key);
    }
  }
  if (!f.contains("basis") || !f["basis"].is_array() || f["basis"].size() != m->size()) {
    throw Error(ErrorCode::DimensionMismatch, "\"basis\" needs one list of vectors per atom", "/basis");
  }
  if (!f.contains("values") || !f["values"].is_array() || f["values"].size() != m->size()) {
    throw Error(ErrorCode::DimensionMismatch, "\"values\" needs one list per atom", "/values");
  }
  if (!f.contains("gauge")) throw Error(ErrorCode::InvalidInput, "missing field \"gauge\"", "/gauge");
  std::vector<Matrix> spans;
  std::vector<Vector> values;
  for (std::size_t a = 0; a < m->size(); ++a) {
    const std::string path = "/basis/" + std::to_string(a);
    const auto& rows = f["basis"][a];
    if (!rows.is_array()) throw Error(ErrorCode::InvalidInput, "expected an array", path);
    const auto k = static_cast<Eigen::Index>(rows.size());
    const Matrix b = io::matrix_at(rows, k, static_cast<Eigen::Index>(m->dim(a)), path).transpose();
    if (numerical_rank(b) != static_cast<std::size_t>(k)) {
      throw Error(ErrorCode::InvalidInput, "basis vectors must be linearly independent", path);
    }
    spans.push_back(b);
    values.push_back(io::vector_at(f["values"][a], "/values/" + std::to_string(a)));
  }
  const finite::Fn g = io::fn_from_json(f["gauge"], "/gauge");
  const module::Submodule n(m, spans);
  const ModuleElement omega = hom::hahn_banach_extend(n, values, g);
  const finite::Fn norm = module::pointwise_norm(omega);
  Outcome o;
  o.report["spec_refs"] = {"Hahn-Banach extension for normed modules"};
  o.report["extension"] = io::to_json(omega);
  o.report["|omega|"] = io::to_json(norm);
  const double tol = tolerance(c, 1e-8);
  double restriction = 0.0;
  for (std::size_t a = 0; a < m->size(); ++a) {
    if (values[a].size() == 0) continue;
    const Vector got = spans[a].transpose() * omega.at(a);
    restriction = std::max(restriction, (got - values[a]).cwiseAbs().maxCoeff() / (1.0 + values[a].cwiseAbs().maxCoeff()));
  }
  check(o, "restricts_to_functional", restriction <= tol, io::number(restriction));
  double excess = 0.0;
  const std::size_t samples = c.samples == 0 ? 1000 : c.samples;
  for (std::size_t k = 0; k < samples; ++k) {
    const ModuleElement v = module::random_element(rng, m);
    const finite::Fn nv = module::pointwise_norm(v);
    for (std::size_t a = 0; a < m->size(); ++a) {
      excess = std::max(excess, (omega.at(a).dot(v.at(a)) - g[a] * nv[a]) / (1.0 + g[a] * nv[a]));
    }
  }
  check(o, "dominated", excess <= tol, io::number(excess));
  return o;
}

Outcome stone(const Config& c, Rng&) {
  require(c.generators_text, "--generators");
  const json gens = io::parse_json(c.generators_text, "--generators");
  if (!gens.is_array()) throw Error(ErrorCode::InvalidInput, "--generators must be an array of 0/1 arrays", "--generators");
  std::vector<finite::Fn> generators;
  for (std::size_t i = 0; i < gens.size(); ++i) generators.push_back(io::fn_from_json(gens[i], "--generators/" + std::to_string(i)));
  const auto s = finite::stone_atoms(generators);
  Outcome o;
  o.report["spec_refs"] = {"Stone representation of finite Boolean algebras"};
  json atoms = json::array();
  for (const auto& a : s.atoms) atoms.push_back(indicator_json(a));
  o.report["atoms"] = atoms;
  o.report["embedding"] = s.embedding;
  bool exact = true;
  for (std::size_t i = 0; i < generators.size(); ++i) exact = exact && finite::realize(s, s.embedding[i]) == generators[i];
  check(o, "generators_realized", exact);
  bool disjoint = true;
  for (std::size_t i = 0; i < s.atoms.size(); ++i) {
    for (std::size_t j = i + 1; j < s.atoms.size(); ++j) {
      disjoint = disjoint && finite::boolean_product(s.atoms[i], s.atoms[j]) == finite::Fn::zeros(s.atoms[i].size());
    }
  }
  check(o, "atoms_disjoint", disjoint);
  return o;
}

json error_json(const std::string& code, const std::string& message, const std::string& path) {
  return {{"error", {{"code", code}, {"message", message}, {"path", path}}}};
}

void emit(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out) {
  Config c;
  CLI::App app{"Finite-dimensional normed modules over Riesz spaces", "rieszmod"};
  app.require_subcommand(1, 1);
  const auto common = [&](CLI::App* sub) {
    sub->add_option("--seed", c.seed_text, "64-bit seed; falls back to RIESZMOD_SEED, then 0");
    sub->add_option("--samples", c.samples, "number of random samples")->check(CLI::PositiveNumber);
    sub->add_option("--tol", c.tol, "tolerance override for the report checks")->check(CLI::NonNegativeNumber);
  };
  auto* s_laws = app.add_subcommand("laws", "Riesz/f-algebra identities and structure axioms on random triples");
  s_laws->add_option("--structure", c.structure, "structure JSON")->required();
  auto* s_cot = app.add_subcommand("cotangent", "graph-gradient generated module and |df|");
  s_cot->add_option("--graph", c.graph, "graph JSON")->required();
  s_cot->add_option("--p", c.p_text, "exponent, a number >= 1 or \"inf\"");
  s_cot->add_option("--fn", c.fn_text, "function on the vertices, a JSON array")->required();
  s_cot->add_option("--structure", c.structure, "structure JSON over the vertices (default: unit weights, V = L^p)");
  s_cot->add_flag("--faithful", c.faithful, "replay the equivalence-class construction (at most 3 vertices)");
  auto* s_proj = app.add_subcommand("project", "projection onto a convex set in a Hilbert module");
  s_proj->add_option("--module", c.module, "module JSON")->required();
  s_proj->add_option("--element", c.element, "element JSON")->required();
  s_proj->add_option("--set", c.set, "convex set JSON")->required();
  auto* s_dec = app.add_subcommand("decompose", "dimensional decomposition");
  s_dec->add_option("--module", c.module, "module JSON")->required();
  auto* s_dual = app.add_subcommand("dual", "dual module, bidual embedding, norming functionals, hom norms");
  s_dual->add_option("--module", c.module, "module JSON")->required();
  s_dual->add_option("--element", c.element, "element JSON for a norming functional");
  s_dual->add_option("--target", c.target, "target module JSON for --hom");
  s_dual->add_option("--hom", c.functional, "hom JSON from --module to --target");
  auto* s_pf = app.add_subcommand("pushforward", "pushforward along a precomposition");
  s_pf->add_option("--module", c.module, "module JSON")->required();
  s_pf->add_option("--map", c.map_text, "source atom for each target atom, a JSON array")->required();
  s_pf->add_option("--target", c.target, "target structure JSON (default: unit weights)");
  s_pf->add_option("--element", c.element, "element JSON to push forward");
  auto* s_hb = app.add_subcommand("hahn-banach", "dominated extension of a functional on a submodule");
  s_hb->add_option("--module", c.module, "module JSON")->required();
  s_hb->add_option("--functional", c.functional, "JSON with basis, values and gauge")->required();
  auto* s_stone = app.add_subcommand("stone", "atoms of the Boolean algebra generated by idempotents");
  s_stone->add_option("--generators", c.generators_text, "JSON array of 0/1 arrays")->required();
  for (auto* sub : app.get_subcommands({})) common(sub);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    emit(out, error_json("InvalidInput", e.what(), ""));
    return kInputError;
  }

  const std::map<std::string, std::function<Outcome(const Config&, Rng&)>> commands{
      {"laws", laws},       {"cotangent", cotangent},     {"project", project},         {"decompose", decompose},
      {"dual", dual},       {"pushforward", pushforward}, {"hahn-banach", hahn_banach}, {"stone", stone},
  };
  c.command = app.get_subcommands().front()->get_name();
  try {
    const std::uint64_t seed = resolve_seed(c);
    Rng rng(seed);
    Outcome o = commands.at(c.command)(c, rng);
    o.report["command"] = c.command;
    o.report["version"] = kReportVersion;
    o.report["seed"] = seed;
    o.report["failures"] = o.failures;
    o.report["ok"] = o.failures.empty();
    if (!o.report.contains("checks")) o.report["checks"] = json::object();
    emit(out, o.report);
    return o.failures.empty() ? kOk : kCheckFailed;
  } catch (const Error& e) {
    emit(out, error_json(std::string(to_string(e.code())), e.what(), e.path()));
    return kInputError;
  }
}

}  // namespace rieszmod::cli
