#include "symdef/cli/cli.hpp"

#include <algorithm>
#include <functional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "symdef/io/json.hpp"
#include "symdef/version.hpp"

namespace symdef::cli {

namespace {

using io::Json;
using io::to_json;

enum class Verdict { verified, falsified, inconclusive };

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::verified: return "verified";
    case Verdict::falsified: return "falsified";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "";
}

int exit_code(Verdict v) {
  switch (v) {
    case Verdict::verified: return kVerified;
    case Verdict::falsified: return kFalsified;
    case Verdict::inconclusive: return kInconclusive;
  }
  return kInternal;
}

struct Outcome {
  Json input;
  Json result;
  Verdict verdict = Verdict::verified;
};

void render_text(const Json& j, std::ostream& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  if (j.is_object() && !j.empty()) {
    for (const auto& [key, value] : j.items()) {
      if (value.is_structured() && !value.empty()) {
        out << pad << key << ":\n";
        render_text(value, out, indent + 2);
      } else {
        out << pad << key << ": ";
        render_text(value, out, indent);
      }
    }
  } else if (j.is_array()) {
    if (j.empty()) {
      out << "[]\n";
      return;
    }
    std::size_t i = 0;
    for (const auto& value : j) {
      if (value.is_structured() && !value.empty()) {
        out << pad << "[" << i << "]\n";
        render_text(value, out, indent + 2);
      } else {
        out << pad << "- ";
        render_text(value, out, indent);
      }
      ++i;
    }
  } else if (j.is_string()) {
    std::string s = j.get<std::string>();
    if (s.find('\n') == std::string::npos) {
      out << s << "\n";
    } else {
      // Multi-line operator renderings stay readable.
      out << "|\n";
      std::istringstream lines(s);
      for (std::string line; std::getline(lines, line);) out << pad << "    " << line << "\n";
    }
  } else {
    out << j.dump() << "\n";
  }
}

/// Coboundary search at the bounds and at bounds + 2.
template <class Op, std::size_t P>
Json nontriviality(const Cochain<Op, P>& c, const BoundsSpec& bounds) {
  Json out = {{"bounds", to_json(bounds)}, {"bumped_bounds", to_json(bounds.bumped())}};
  for (const BoundsSpec& b : {bounds, bounds.bumped()}) {
    auto r = coboundary_solve(c, b);
    if (auto* w = std::get_if<Witness<Op, P>>(&r)) {
      out["status"] = "coboundary";
      out["witness"] = to_json(w->b);
      out["witness_bounds"] = to_json(b);
      return out;
    }
  }
  out["status"] = "nontrivial within bounds (stable under bounds+2)";
  return out;
}

Outcome verify_cocycle(const std::string& id_text, const std::optional<BoundsSpec>& bounds) {
  const CatalogId id = CatalogId::parse(id_text);
  Outcome o;
  o.input = {{"id", id.to_string()}};
  std::visit(
      [&](const auto& c) {
        const bool closed = differential(c).is_zero();
        const BoundsSpec b = bounds.value_or(default_bounds(c));
        o.result = {{"algebra", to_string(c.algebra().kind())},
                    {"degree", id.degree()},
                    {"parity", to_string(c.parity())},
                    {"lambda", c.space().source_weight().to_string()},
                    {"mu", c.space().target_weight().to_string()},
                    {"cochain", to_json(c)},
                    {"cocycle", closed}};
        if (closed) o.result["nontriviality"] = nontriviality(c, b);
        o.verdict = closed ? Verdict::verified : Verdict::falsified;
      },
      build(id));
  return o;
}

Outcome cohomology_dim_cmd(const std::string& algebra, const Rational& lambda, const Rational& mu, int degree,
                           const std::optional<BoundsSpec>& bounds) {
  AlgebraKind kind;
  if (algebra == "sl2")
    kind = AlgebraKind::sl2;
  else if (algebra == "osp12")
    kind = AlgebraKind::osp12;
  else
    throw UsageError("--algebra: expected sl2 or osp12");
  if (degree != 1 && degree != 2) throw UsageError("--degree: expected 1 or 2");
  Outcome o;
  o.input = {{"algebra", algebra}, {"lambda", lambda.to_string()}, {"mu", mu.to_string()}, {"degree", degree}};
  const CohomologyDim c = cohomology_dim(lambda, mu, degree, kind, bounds);
  o.result = to_json(c);
  o.verdict = c.stabilized ? Verdict::verified : Verdict::inconclusive;
  return o;
}

template <NormalFormOperator Op>
Outcome obstruction_for(const DeformationSpec& spec, const std::optional<BoundsSpec>& bounds) {
  Outcome o;
  o.input = to_json(spec);
  const DeformedAction<Op> d = build_infinitesimal<Op>(spec);
  const ObstructionReport<Op> r = obstruction_classes(d, bounds);
  o.result = to_json(r);
  bool concordant = true;
  for (const auto& b : r.blocks)
    if (b.printed && !b.concordant) concordant = false;
  o.result["printed_generators_concordant"] = concordant;
  o.verdict = r.conclusive ? Verdict::verified : Verdict::inconclusive;
  return o;
}

template <NormalFormOperator Op>
std::vector<std::pair<long, ParamScalar>> engine_generators(const DeformationSpec& spec,
                                                            const std::optional<BoundsSpec>& bounds, bool& conclusive) {
  DeformationSpec formal = spec;
  formal.params.clear();
  const ObstructionReport<Op> r = obstruction_classes(build_infinitesimal<Op>(formal), bounds);
  conclusive = r.conclusive;
  std::vector<std::pair<long, ParamScalar>> out;
  for (const auto& b : r.blocks) {
    if (b.k == 0 && !b.cls.is_zero())
      throw InvariantViolation("obstruction on a block without an off-diagonal parameter");
    if (b.k > 0) out.emplace_back(b.k, b.cls);
  }
  return out;
}

template <NormalFormOperator Op>
Outcome integrability_for(const DeformationSpec& spec, const std::optional<BoundsSpec>& bounds) {
  Outcome o;
  o.input = to_json(spec);
  bool conclusive = true;
  const auto gens = engine_generators<Op>(spec, bounds, conclusive);
  Json engine = Json::array(), printed = Json::array();
  bool engine_ok = true;
  for (const auto& v : check_conditions(spec, gens)) {
    engine.push_back(to_json(v));
    engine_ok = engine_ok && v.satisfied;
  }
  bool printed_ok = true;
  if (spec.resonant())
    for (const auto& v : check_printed_conditions(spec)) {
      printed.push_back(to_json(v));
      printed_ok = printed_ok && v.satisfied;
    }
  o.result = {{"engine_conditions", engine},
              {"engine_satisfied", engine_ok},
              {"printed_conditions", printed},
              {"printed_satisfied", printed_ok},
              {"agree", engine_ok == printed_ok}};
  o.verdict = !conclusive ? Verdict::inconclusive : engine_ok ? Verdict::verified : Verdict::falsified;
  return o;
}

template <NormalFormOperator Op>
Outcome flat_deform_for(const DeformationSpec& spec) {
  Outcome o;
  o.input = to_json(spec);
  ParamAssignment point;
  const AlphabetPtr alpha = spec.alphabet();
  for (std::size_t i = 0; i < alpha->size(); ++i) {
    const auto& s = alpha->symbol(i);
    if (s.parity == Parity::odd) continue;
    auto it = spec.params.find(s.name);
    point[s.name] = it == spec.params.end() ? Rational(0) : it->second;
  }
  const DeformedAction<Op> d = build_infinitesimal<Op>(spec).substituted(point);
  const HomomorphismVerdict v = verify_homomorphism(d);
  o.result = {{"higher_terms", 0}, {"unassigned_even_parameters", "set to 0"}, {"homomorphism", to_json(v)}};
  o.verdict = v.pass ? Verdict::verified : Verdict::falsified;
  return o;
}

template <class F>
Outcome by_flavor(const DeformationSpec& spec, F&& f) {
  return spec.flavor == Flavor::classical ? f.template operator()<DiffOp>(spec) : f.template operator()<SuperDiffOp>(spec);
}

Outcome example1_cmd(long m, const std::vector<Rational>& alphas, const std::optional<BoundsSpec>& bounds) {
  Outcome o;
  Json a = Json::array();
  for (const auto& x : alphas) a.push_back(x.to_string());
  o.input = {{"m", m}, {"alphas", a}};
  const Example1Report r = example1_family(m, alphas, bounds);
  if (!r.solved_verdict.pass) throw InvariantViolation("engine-solved family is not a homomorphism");
  o.result = to_json(r);
  o.verdict = r.printed_verdict.pass ? Verdict::verified : Verdict::falsified;
  return o;
}

Outcome lemma23_cmd(long k) {
  if (k < 2) throw UsageError("--k: must be at least 2");
  Outcome o;
  o.input = {{"k", k}};
  const Lemma23Result r = lemma23_check(k);
  o.result = to_json(r);
  o.verdict = r.pass ? Verdict::verified : Verdict::falsified;
  return o;
}

std::vector<Rational> parse_list(const std::string& text, const std::string& flag) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    try {
      out.push_back(Rational::parse(item));
    } catch (const UsageError& e) {
      throw UsageError(flag + ": " + e.what());
    }
  }
  if (out.empty()) throw UsageError(flag + ": empty list");
  return out;
}

Rational parse_rational(const std::string& text, const std::string& flag) {
  try {
    return Rational::parse(text);
  } catch (const UsageError& e) {
    throw UsageError(flag + ": " + e.what());
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Symbolic deformation and cohomology engine", "symdef"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  std::string format = "text";
  std::string bounds_text;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--bounds", bounds_text, "Truncation bounds: order,degree");
  };

  std::string id;
  auto* verify = app.add_subcommand("verify-cocycle", "Check the cocycle condition and nontriviality of a catalog cochain");
  verify->add_option("--id", id, "Catalog id, e.g. Phi:k=2")->required();
  common(verify);

  std::string algebra, lambda_text, mu_text;
  int degree = 1;
  auto* dim = app.add_subcommand("cohomology-dim", "Truncated cohomology dimension");
  dim->add_option("--algebra", algebra, "sl2 or osp12")->required();
  dim->add_option("--lambda", lambda_text, "Source weight p/q")->required();
  dim->add_option("--mu", mu_text, "Target weight p/q")->required();
  dim->add_option("--degree", degree, "1 or 2")->required();
  common(dim);

  std::string flavor_text;
  long m = 0;
  std::size_t window = 0;
  auto* obstruction = app.add_subcommand("obstruction", "Obstruction classes of the resonant infinitesimal deformation");
  obstruction->add_option("--flavor", flavor_text, "classical or super")->required()->check(CLI::IsMember({"classical", "super"}));
  obstruction->add_option("--m", m, "2 delta")->required();
  obstruction->add_option("--window", window, "Highest window component");
  common(obstruction);

  std::string spec_path;
  auto* integrability = app.add_subcommand("integrability", "Evaluate integrability conditions at a parameter point");
  integrability->add_option("--spec", spec_path, "Deformation spec JSON file")->required();
  common(integrability);
  auto* flat = app.add_subcommand("flat-deform", "Build a deformation and verify the homomorphism property");
  flat->add_option("--spec", spec_path, "Deformation spec JSON file")->required();
  common(flat);

  std::string alphas_text;
  auto* example = app.add_subcommand("example1", "Audit the one-parameter family c_k = (2k-m+1) alpha_k t / (alpha_k - alpha_{m-k-1})");
  example->add_option("--m", m, "2 delta")->required();
  example->add_option("--alphas", alphas_text, "alpha_0,alpha_1,...")->required();
  common(example);

  long k = 0;
  auto* lemma = app.add_subcommand("lemma23", "Compare Omega_k with Phi_{k-1}, Phi_k on sl(2) pairs");
  lemma->add_option("--k", k, "Index k >= 2")->required();
  common(lemma);

  std::ostringstream help_out, help_err;
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, help_out, help_err);
    out << help_out.str();
    err << help_err.str();
    return code == 0 ? kVerified : kUsage;
  }

  CLI::App* sub = app.get_subcommands().front();
  const std::string command = sub->get_name();
  Outcome o;
  try {
    std::optional<BoundsSpec> bounds;
    if (!bounds_text.empty()) {
      try {
        bounds = BoundsSpec::parse(bounds_text);
      } catch (const UsageError& e) {
        throw UsageError(std::string("--bounds: ") + e.what());
      }
    }
    if (sub == verify) {
      o = verify_cocycle(id, bounds);
    } else if (sub == dim) {
      o = cohomology_dim_cmd(algebra, parse_rational(lambda_text, "--lambda"), parse_rational(mu_text, "--mu"), degree,
                             bounds);
    } else if (sub == obstruction) {
      const Flavor f = flavor_text == "classical" ? Flavor::classical : Flavor::super;
      const DeformationSpec spec =
          DeformationSpec::resonant(f, m, window == 0 ? std::nullopt : std::optional<std::size_t>(window));
      spec.validate();
      o = by_flavor(spec, [&]<class Op>(const DeformationSpec& s) { return obstruction_for<Op>(s, bounds); });
    } else if (sub == integrability) {
      const DeformationSpec spec = io::read_spec_file(spec_path);
      o = by_flavor(spec, [&]<class Op>(const DeformationSpec& s) { return integrability_for<Op>(s, bounds); });
    } else if (sub == flat) {
      const DeformationSpec spec = io::read_spec_file(spec_path);
      o = by_flavor(spec, [&]<class Op>(const DeformationSpec& s) { return flat_deform_for<Op>(s); });
    } else if (sub == example) {
      o = example1_cmd(m, parse_list(alphas_text, "--alphas"), bounds);
    } else {
      o = lemma23_cmd(k);
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const InvariantViolation& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternal;
  }

  Json argv = Json::array();
  for (const auto& a : args) argv.push_back(a);
  Json report = {{"command", command},
                 {"argv", argv},
                 {"input", o.input},
                 {"engine", {{"name", "symdef"}, {"version", kVersion}}},
                 {"sign_convention", to_json(kCalibratedConvention)},
                 {"result", o.result},
                 {"verdict", verdict_name(o.verdict)}};
  if (format == "json")
    out << report.dump(2) << "\n";
  else
    render_text(report, out, 0);
  return exit_code(o.verdict);
}

}  // namespace symdef::cli
