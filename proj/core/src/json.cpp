#include "symdef/io/json.hpp"

#include <fstream>
#include <set>

namespace symdef::io {

Json to_json(const Rational& q) { return q.to_string(); }

Json to_json(const Poly& p) {
  Json out = Json::array();
  for (const auto& c : p.coeffs()) out.push_back(c.to_string());
  return out;
}

Json to_json(const SuperPoly& p) { return {{"f0", to_json(p.f0())}, {"f1", to_json(p.f1())}}; }

Json to_json(const DiffOp& a) {
  Json coeffs = Json::array();
  for (const auto& c : a.coeffs()) coeffs.push_back(to_json(c));
  return {{"lambda", a.source_weight().to_string()},
          {"mu", a.target_weight().to_string()},
          {"coeffs", coeffs},
          {"text", a.to_string()}};
}

Json to_json(const SuperDiffOp& a) {
  Json coeffs = Json::array();
  for (const auto& c : a.coeffs()) coeffs.push_back(to_json(c));
  return {{"lambda", a.source_weight().to_string()},
          {"mu", a.target_weight().to_string()},
          {"parity", to_string(a.parity())},
          {"coeffs", coeffs},
          {"text", a.to_string()}};
}

Json to_json(const ParamScalar& p) { return p.to_string(); }

Json to_json(const BoundsSpec& b) {
  return {{"max_operator_order", b.max_operator_order}, {"max_coefficient_degree", b.max_coefficient_degree}};
}

Json to_json(const SignConvention& sc) {
  return {{"action_koszul", sc.action_koszul},
          {"bracket_koszul", sc.bracket_koszul},
          {"calibrated", sc == kCalibratedConvention}};
}

Json to_json(const CohomologyDim& c) {
  Json table = Json::array();
  for (const auto& r : c.table)
    table.push_back({{"parity", to_string(r.parity)},
                     {"weight", r.weight.to_string()},
                     {"cocycles", r.cocycles},
                     {"coboundaries", r.coboundaries},
                     {"dim", r.dim}});
  return {{"dim", c.dim},
          {"stabilized", c.stabilized},
          {"status", c.stabilized ? "stabilized" : "not stabilized"},
          {"bounds", to_json(c.bounds)},
          {"table", table},
          {"not_examined_above_weight", c.examined_up_to.to_string()},
          {"dim_at_bumped_bounds", c.dim_bumped},
          {"not_examined_above_weight_bumped", c.examined_up_to_bumped.to_string()}};
}

Json to_json(const Lemma23Result& r) {
  const LieAlgebra& g = LieAlgebra::osp12();
  Json pairs = Json::array();
  for (const auto& p : r.pairs)
    pairs.push_back({{"first", g.name(p.first)},
                     {"second", g.name(p.second)},
                     {"lhs", p.lhs.dx_dtheta_string()},
                     {"rhs", p.rhs.dx_dtheta_string()},
                     {"residual", p.residual.is_zero() ? Json(nullptr) : Json(p.residual.dx_dtheta_string())}});
  return {{"k", r.k}, {"pass", r.pass}, {"pairs", pairs}};
}

Json to_json(const HomomorphismVerdict& v) {
  Json out = {{"pass", v.pass}};
  if (!v.pass) {
    Json blocks = Json::array();
    for (const auto& b : v.residual_blocks) blocks.push_back({{"source_k", b.first}, {"target_k", b.second}});
    out["first"] = v.first;
    out["second"] = v.second;
    out["residual_blocks"] = blocks;
    out["residual"] = v.residual;
  }
  return out;
}

Json to_json(const ConditionVerdict& v) {
  return {{"k", v.k}, {"generator", v.generator.to_string()}, {"value", v.value.to_string()}, {"satisfied", v.satisfied}};
}

Json to_json(const Example1Report& r) {
  Json alphas = Json::array();
  for (const auto& a : r.alphas) alphas.push_back(a.to_string());
  Json ks = Json::array();
  for (const auto& [k, c] : r.printed_c)
    ks.push_back({{"k", k}, {"printed_c_over_t", c.to_string()}, {"solved_c_over_t", r.solved_c.at(k).to_string()}});
  Json gens = Json::array();
  for (const auto& [k, g] : r.engine_generators) gens.push_back({{"k", k}, {"generator", g.to_string()}});
  return {{"m", r.m},
          {"alphas", alphas},
          {"coefficients", ks},
          {"engine_generators", gens},
          {"printed_family", to_json(r.printed_verdict)},
          {"solved_family", to_json(r.solved_verdict)},
          {"coincide", r.coincide}};
}

Json to_json(const DeformationSpec& s) {
  Json out = {{"flavor", to_string(s.flavor)}};
  if (auto m = s.m())
    out["m"] = *m;
  else
    out["delta"] = s.delta.to_string();
  out["window"] = s.window;
  Json params = Json::object();
  for (const auto& [k, v] : s.params) params[k] = v.to_string();
  out["params"] = params;
  return out;
}

Rational rational_from_json(const Json& j, const std::string& path) {
  try {
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (j.is_string()) return Rational::parse(j.get<std::string>());
  } catch (const UsageError& e) {
    throw UsageError(path + ": " + e.what());
  }
  throw UsageError(path + ": expected a rational as a string \"p/q\" or an integer");
}

namespace {

long integer_field(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) throw UsageError(path + ": expected an integer");
  return j.get<long>();
}

}  // namespace

DeformationSpec spec_from_json(const Json& j) {
  if (!j.is_object()) throw UsageError("spec: expected a JSON object");
  static const std::set<std::string> known{"flavor", "m", "delta", "window", "params"};
  for (const auto& [key, value] : j.items())
    if (!known.count(key)) throw UsageError("spec." + key + ": unknown field");
  if (!j.contains("flavor") || !j["flavor"].is_string()) throw UsageError("spec.flavor: expected \"classical\" or \"super\"");
  const std::string f = j["flavor"].get<std::string>();
  Flavor flavor;
  if (f == "classical")
    flavor = Flavor::classical;
  else if (f == "super")
    flavor = Flavor::super;
  else
    throw UsageError("spec.flavor: expected \"classical\" or \"super\", got \"" + f + "\"");

  std::optional<std::size_t> window;
  if (j.contains("window")) {
    const long w = integer_field(j["window"], "spec.window");
    if (w <= 0) throw UsageError("spec.window: must be positive");
    window = static_cast<std::size_t>(w);
  }
  if (j.contains("m") == j.contains("delta")) throw UsageError("spec: give exactly one of \"m\" and \"delta\"");
  DeformationSpec spec;
  try {
    spec = j.contains("m") ? DeformationSpec::resonant(flavor, integer_field(j["m"], "spec.m"), window)
                           : DeformationSpec::generic(flavor, rational_from_json(j["delta"], "spec.delta"), window);
  } catch (const UsageError& e) {
    const std::string msg = e.what();
    throw UsageError(msg.rfind("spec.", 0) == 0 ? msg : (j.contains("m") ? "spec.m: " : "spec.delta: ") + msg);
  }
  if (j.contains("params")) {
    const Json& p = j["params"];
    if (!p.is_object()) throw UsageError("spec.params: expected an object");
    for (const auto& [name, value] : p.items()) spec.params[name] = rational_from_json(value, "spec.params." + name);
  }
  try {
    spec.validate();
  } catch (const UsageError& e) {
    throw UsageError(std::string("spec.") + e.what());
  }
  return spec;
}

DeformationSpec read_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open spec file " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw UsageError("spec: malformed JSON in " + path + ": " + e.what());
  }
  return spec_from_json(j);
}

}  // namespace symdef::io
