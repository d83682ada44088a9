#pragma once

#include <string>

#include <json.hpp>

#include "symdef/catalog/catalog.hpp"
#include "symdef/deformation/deformation.hpp"

namespace symdef::io {

/// Insertion-ordered so that reports are byte-stable.
using Json = nlohmann::ordered_json;

Json to_json(const Rational& q);
Json to_json(const Poly& p);
Json to_json(const SuperPoly& p);
Json to_json(const DiffOp& a);
Json to_json(const SuperDiffOp& a);
Json to_json(const ParamScalar& p);
Json to_json(const BoundsSpec& b);
Json to_json(const SignConvention& sc);
Json to_json(const CohomologyDim& c);
Json to_json(const Lemma23Result& r);
Json to_json(const HomomorphismVerdict& v);
Json to_json(const ConditionVerdict& v);
Json to_json(const Example1Report& r);
Json to_json(const DeformationSpec& s);

template <NormalFormOperator Op>
Json to_json(const GradedOp<Op>& g) {
  Json blocks = Json::array();
  for (const auto& [b, op] : g.blocks())
    blocks.push_back({{"source_k", b.first}, {"target_k", b.second}, {"op", to_json(op)}});
  return {{"delta", g.delta().to_string()}, {"window", g.window()}, {"parity", to_string(g.parity())},
          {"blocks", blocks}};
}

template <class V>
Json to_json(const ParamSum<V>& p) {
  Json terms = Json::array();
  for (const auto& [m, v] : p.terms())
    terms.push_back({{"monomial", m.is_one() ? std::string("1") : to_string(m, *p.alphabet())}, {"value", to_json(v)}});
  return terms;
}

template <class V, std::size_t P>
Json to_json(const Cochain<V, P>& c) {
  const LieAlgebra& g = c.algebra();
  Json images = Json::array();
  for (const auto& [t, v] : c.images()) {
    Json args = Json::array();
    for (std::size_t i : t) args.push_back(g.name(i));
    images.push_back({{"args", args}, {"value", to_json(v)}});
  }
  return {{"algebra", to_string(g.kind())}, {"degree", P}, {"parity", to_string(c.parity())}, {"images", images}};
}

template <NormalFormOperator Op>
Json to_json(const ObstructionReport<Op>& r) {
  Json blocks = Json::array();
  for (const auto& b : r.blocks) {
    Json witness = Json::array();
    for (const auto& [m, w] : b.witness)
      witness.push_back({{"monomial", to_string(m, *b.cls.alphabet())}, {"cochain", to_json(w)}});
    Json entry = {{"block", {{"source_k", b.block.first}, {"target_k", b.block.second}}},
                  {"k", b.k},
                  {"basis", b.basis ? Json(b.basis->to_string()) : Json(nullptr)},
                  {"class", b.cls.to_string()},
                  {"witness", witness},
                  {"decomposed", b.decomposed}};
    if (b.printed) {
      entry["printed_class"] = b.printed->to_string();
      entry["concordant"] = b.concordant;
      entry["scalar"] = b.scalar ? Json(b.scalar->to_string()) : Json(nullptr);
      entry["verdict"] = !b.decomposed ? "inconclusive" : b.concordant ? "agrees up to scalar" : "discrepancy";
    } else {
      entry["verdict"] = b.decomposed ? "no printed counterpart" : "inconclusive";
    }
    blocks.push_back(entry);
  }
  Json gens = Json::array();
  for (const auto& g : r.generators) gens.push_back(g.to_string());
  return {{"blocks", blocks},
          {"generators", gens},
          {"linear_part_vanishes", r.linear_part_vanishes},
          {"conclusive", r.conclusive},
          {"bounds", to_json(r.bounds)}};
}

/// Reads a deformation spec file object. Errors name the offending field path.
DeformationSpec spec_from_json(const Json& j);
DeformationSpec read_spec_file(const std::string& path);

/// Rational from a JSON string or integer; `path` is used in error messages.
Rational rational_from_json(const Json& j, const std::string& path);

}  // namespace symdef::io
