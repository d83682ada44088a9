#pragma once

// Random-point protocol shared by the property tests and the acceptance binary:
// a generator vanishes at a point iff the defect there is a coboundary, and
// vanishing points give flat actions.

#include <random>
#include <set>
#include <string>
#include <vector>

#include "symdef/deformation/deformation.hpp"

namespace certify {

using namespace symdef;

inline Rational random_rational(std::mt19937_64& rng, long span = 5, long den = 4) {
  std::uniform_int_distribution<long> p(-span, span), q(1, den);
  return Rational(p(rng), q(rng));
}

struct PointOutcome {
  bool vanishes = false;
  bool coboundary = false;
  bool flat = false;
};

inline bool generators_vanish(const std::vector<std::pair<long, ParamScalar>>& gens, const ParamAssignment& point) {
  for (const auto& [k, g] : gens)
    for (const auto& [odd, value] : split_by_odd_part(param_substitute(g, point)))
      if (!value.is_zero()) return false;
  return true;
}

template <NormalFormOperator Op>
PointOutcome check_point(const DeformationSpec& spec, const std::vector<std::pair<long, ParamScalar>>& gens,
                         const ParamAssignment& point) {
  PointOutcome out;
  out.vanishes = generators_vanish(gens, point);
  const DeformedAction<Op> d = build_infinitesimal<Op>(spec).substituted(point);
  const auto defect = defect_cochain(d);
  std::set<Monomial> monomials;
  std::set<BlockIndex> blocks;
  for (const auto& [t, v] : defect.images())
    for (const auto& [m, op] : v.terms()) {
      monomials.insert(m);
      for (const auto& [b, x] : op.blocks()) blocks.insert(b);
    }
  out.coboundary = true;
  for (const auto& m : monomials)
    for (const auto& b : blocks) {
      Cochain2<Op> c = block_cochain<Op>(defect, m, b);
      if (c.is_zero()) continue;
      if (std::holds_alternative<NoSolutionWithinBounds>(coboundary_solve(c))) out.coboundary = false;
    }
  out.flat = verify_homomorphism(d).pass;
  return out;
}

/// Random values for every even parameter. When `on_variety`, the point is
/// moved onto the zero set: c_k is solved for (classical) or the even
/// parameters multiplying formal odd ones are set to zero (super).
inline ParamAssignment random_point(const DeformationSpec& spec, const std::vector<std::pair<long, ParamScalar>>& gens,
                                    bool on_variety, std::mt19937_64& rng) {
  ParamAssignment p;
  const AlphabetPtr alpha = spec.alphabet();
  for (const auto& s : alpha->symbols())
    if (s.parity == Parity::even) p[s.name] = random_rational(rng);
  if (!on_variety) return p;
  if (spec.flavor == Flavor::super) {
    for (const auto& [k, g] : gens)
      for (const auto& [m, c] : g.terms())
        for (const auto& [idx, e] : m.factors())
          if (alpha->symbol(idx).parity == Parity::even) p[alpha->symbol(idx).name] = Rational(0);
    return p;
  }
  for (const auto& [k, g] : gens) {
    const std::string ck = "c" + std::to_string(k);
    auto eval = [&](const Rational& gamma) {
      ParamAssignment q = p;
      q[ck] = gamma;
      return param_substitute(g, q).constant_term();
    };
    const Rational g0 = eval(Rational(0)), g1 = eval(Rational(1));
    if (g1 == g0) {
      // c_k drops out: kill b_k instead
      p["b" + std::to_string(k)] = Rational(0);
    } else {
      p[ck] = -g0 / (g1 - g0);
    }
  }
  return p;
}

template <NormalFormOperator Op>
std::vector<std::pair<long, ParamScalar>> engine_generators(const DeformationSpec& spec, bool* conclusive = nullptr) {
  const ObstructionReport<Op> r = obstruction_classes(build_infinitesimal<Op>(spec));
  if (conclusive) *conclusive = r.conclusive;
  std::vector<std::pair<long, ParamScalar>> out;
  for (const auto& b : r.blocks)
    if (b.k > 0) out.emplace_back(b.k, b.cls);
  return out;
}

}  // namespace certify
