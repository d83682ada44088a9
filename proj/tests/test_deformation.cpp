#include <gtest/gtest.h>

#include "symdef/deformation/deformation.hpp"

using namespace symdef;

namespace {

ParamScalar sym(const DeformationSpec& s, const std::string& name) { return ParamScalar::symbol(s.alphabet(), name); }
std::string a(long j) { return "a" + std::to_string(j); }
std::string b(long k) { return "b" + std::to_string(k); }
std::string c(long k) { return "c" + std::to_string(k); }

// Hand-expanded generator: kappa b_k a_k + c_k a_{m-k-1} - c_k a_k.
ParamScalar classical_generator(const DeformationSpec& s, long k) {
  const long m = *s.m();
  return ParamScalar(Rational(2 * k - m + 1)) * sym(s, b(k)) * sym(s, a(k)) + sym(s, c(k)) * sym(s, a(m - k - 1)) -
         sym(s, c(k)) * sym(s, a(k));
}

ParamScalar super_generator(const DeformationSpec& s, long k) {
  const long m = *s.m();
  return sym(s, b(k)) * sym(s, a(m - 1 + k)) + sym(s, c(k)) * sym(s, a(m - k)) - sym(s, c(k)) * sym(s, a(m - 1 + k));
}

// Class coefficient of one quadratic monomial on block s -> t, computed straight
// from catalog cocycles: [rho1(X), rho1(Y)] restricted to the monomial.
Rational oracle_class(long m, long k, bool use_b, bool diagonal_at_source) {
  const auto& g = LieAlgebra::sl2();
  const std::size_t s = static_cast<std::size_t>(k), t = static_cast<std::size_t>(m - k - 1);
  const Rational half_m(m, 2);
  Cochain1<DiffOp> off = use_b ? cocycle_B(m, k) : cocycle_C(m, k);
  Cochain1<DiffOp> diag = cocycle_A(half_m - Rational(static_cast<long>(diagonal_at_source ? s : t)));
  Cochain2<DiffOp> q(g, off.space(), Parity::even);
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = i + 1; j < g.size(); ++j) {
      DiffOp v = diagonal_at_source
                     ? compose(off.at({i}), diag.at({j})) - compose(off.at({j}), diag.at({i}))
                     : compose(diag.at({i}), off.at({j})) - compose(diag.at({j}), off.at({i}));
      q.add({i, j}, v);
    }
  auto dec = decompose_on_classes(q, {cocycle_Phi(2 * k - m + 1)}, default_bounds(q));
  if (!dec) throw std::runtime_error("oracle decomposition failed");
  return dec->coefficients[0];
}

std::vector<Alphabet::Symbol> symbols_of(const DeformationSpec& s) { return s.alphabet()->symbols(); }

}  // namespace

TEST(Spec, ResonantRanges) {
  auto s = DeformationSpec::resonant(Flavor::classical, 5);
  EXPECT_EQ(s.k_range(), (std::pair<long, long>{3, 4}));
  EXPECT_EQ(s.window, 12u);
  EXPECT_EQ(s.off_diagonal_block(3), (BlockIndex{3, 1}));
  auto sup = DeformationSpec::resonant(Flavor::super, 2);
  EXPECT_EQ(sup.k_range(), (std::pair<long, long>{1, 2}));
  EXPECT_EQ(sup.off_diagonal_block(1), (BlockIndex{2, 1}));
  EXPECT_EQ(sup.alphabet()->symbol(0).parity, Parity::odd);
  EXPECT_FALSE(DeformationSpec::generic(Flavor::classical, Rational(5, 3)).resonant());
  EXPECT_THROW(DeformationSpec::resonant(Flavor::classical, 1), UsageError);
}

TEST(Spec, ValidateAssignments) {
  auto s = DeformationSpec::resonant(Flavor::super, 2);
  s.params["b1"] = Rational(1);
  EXPECT_THROW(s.validate(), UsageError);
  s.params["b1"] = Rational(0);
  EXPECT_NO_THROW(s.validate());
  s.params["z9"] = Rational(0);
  EXPECT_THROW(s.validate(), UsageError);
  auto w = DeformationSpec::resonant(Flavor::classical, 5, 3);
  EXPECT_THROW(w.validate(), UsageError);
}

TEST(BuildInfinitesimal, NonResonantIsDiagonal) {
  auto d = build_infinitesimal<DiffOp>(DeformationSpec::generic(Flavor::classical, Rational(5, 3)));
  for (const auto& [t, v] : d.first_order.images())
    for (const auto& [m, op] : v.terms())
      for (const auto& [blk, x] : op.blocks()) EXPECT_EQ(blk.first, blk.second);
}

TEST(BuildInfinitesimal, ResonantBlocks) {
  auto spec = DeformationSpec::resonant(Flavor::classical, 3);
  auto d = build_infinitesimal<DiffOp>(spec);
  const auto& alpha = *d.alphabet;
  const GradedOp<DiffOp> v = d.first_order.at({2}).coefficient(Monomial::symbol(alpha.index_of("b2")));
  EXPECT_EQ(v.block(2, 0), cocycle_B(3, 2).at({2}));
  EXPECT_EQ(v.blocks().size(), 1u);
  EXPECT_THROW(build_infinitesimal<SuperDiffOp>(spec), UsageError);
}

TEST(BracketDefect, ZeroWithoutParameters) {
  auto spec = DeformationSpec::resonant(Flavor::classical, 3);
  ParamAssignment zero;
  for (const auto& s : symbols_of(spec)) zero[s.name] = Rational(0);
  EXPECT_TRUE(verify_homomorphism(build_infinitesimal<DiffOp>(spec).substituted(zero)).pass);
}

TEST(BracketDefect, OffDiagonalOnlyIsFlat) {
  auto spec = DeformationSpec::resonant(Flavor::classical, 4);
  ParamAssignment p;
  for (const auto& s : symbols_of(spec)) p[s.name] = Rational(0);
  p["b3"] = Rational(2);
  p["c3"] = Rational(-7);
  EXPECT_TRUE(verify_homomorphism(build_infinitesimal<DiffOp>(spec).substituted(p)).pass);
}

TEST(BracketDefect, HandExpansionOnEulerAndX2) {
  // (X, Y) = (x d/dx, x^2 d/dx), m = 3, block 2 -> 0. B_2 = g' d^2, A = g'.
  // b2 a2: d^2 o 2x - 2x d^2 = 4 d; b2 a0: 1 * 2x d^2 - 2x * d^2 = 0.
  auto spec = DeformationSpec::resonant(Flavor::classical, 3);
  auto d = build_infinitesimal<DiffOp>(spec);
  const auto& alpha = *d.alphabet;
  auto mono = [&](const std::string& p, const std::string& q) {
    return Monomial::from_factors({{static_cast<std::uint32_t>(alpha.index_of(p)), 1},
                                   {static_cast<std::uint32_t>(alpha.index_of(q)), 1}});
  };
  const GradedSum<DiffOp> defect = bracket_defect(d, 1, 2);
  const GradedOp<DiffOp> src = defect.coefficient(mono("b2", "a2"));
  EXPECT_EQ(src.blocks().size(), 1u);
  EXPECT_EQ(src.block(2, 0), DiffOp::monomial(Rational(-1, 2), Rational(3, 2), 0, 1, Rational(4)));
  EXPECT_TRUE(defect.coefficient(mono("b2", "a0")).is_zero());

  ParamAssignment p;
  for (const auto& s : symbols_of(spec)) p[s.name] = Rational(0);
  p["a2"] = Rational(1);
  p["b2"] = Rational(1);
  auto v = verify_homomorphism(build_infinitesimal<DiffOp>(spec).substituted(p));
  EXPECT_FALSE(v.pass);
  EXPECT_EQ(v.residual_blocks, (std::vector<BlockIndex>{{2, 0}}));
  p["a2"] = Rational(0);
  p["a0"] = Rational(1);
  EXPECT_TRUE(verify_homomorphism(build_infinitesimal<DiffOp>(spec).substituted(p)).pass);
}

TEST(BracketDefect, QuadraticIdentity) {
  auto d = build_infinitesimal<DiffOp>(DeformationSpec::resonant(Flavor::classical, 3));
  const auto& g = d.rho0.algebra();
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = 0; j < g.size(); ++j)
      EXPECT_EQ(bracket_defect(d, i, j), supercommutator(d.first_order.at({i}), d.first_order.at({j})));
}

TEST(BracketDefect, SuperQuadraticIdentity) {
  auto d = build_infinitesimal<SuperDiffOp>(DeformationSpec::resonant(Flavor::super, 2));
  const auto& g = d.rho0.algebra();
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = 0; j < g.size(); ++j)
      EXPECT_EQ(bracket_defect(d, i, j), supercommutator(d.first_order.at({i}), d.first_order.at({j})));
}

TEST(Obstruction, ClassicalGeneratorsMatchHandExpansion) {
  for (long m = 2; m <= 5; ++m) {
    auto spec = DeformationSpec::resonant(Flavor::classical, m);
    auto r = obstruction_classes(build_infinitesimal<DiffOp>(spec));
    EXPECT_TRUE(r.conclusive);
    auto [lo, hi] = spec.k_range();
    EXPECT_EQ(r.generators.size(), static_cast<std::size_t>(hi - lo + 1)) << m;
    for (const auto& blk : r.blocks) {
      if (blk.k == 0) {
        EXPECT_TRUE(blk.cls.is_zero());
        continue;
      }
      EXPECT_TRUE(proportional(blk.cls, classical_generator(spec, blk.k)).has_value()) << m << " " << blk.cls.to_string();
    }
  }
}

TEST(Obstruction, ClassCoefficientsMatchOracle) {
  for (long m = 2; m <= 4; ++m) {
    auto spec = DeformationSpec::resonant(Flavor::classical, m);
    auto r = obstruction_classes(build_infinitesimal<DiffOp>(spec));
    auto [lo, hi] = spec.k_range();
    for (long k = lo; k <= hi; ++k) {
      ParamScalar expected(spec.alphabet());
      for (bool use_b : {true, false})
        for (bool at_source : {true, false}) {
          const long j = at_source ? k : m - k - 1;
          expected += ParamScalar(oracle_class(m, k, use_b, at_source)) * sym(spec, use_b ? b(k) : c(k)) * sym(spec, a(j));
        }
      bool found = false;
      for (const auto& blk : r.blocks)
        if (blk.k == k) {
          found = true;
          EXPECT_EQ(blk.cls, expected) << m << "," << k;
        }
      EXPECT_TRUE(found);
    }
  }
}

TEST(Obstruction, SuperGeneratorsMatchHandExpansion) {
  for (long m = 1; m <= 3; ++m) {
    auto spec = DeformationSpec::resonant(Flavor::super, m);
    auto r = obstruction_classes(build_infinitesimal<SuperDiffOp>(spec));
    EXPECT_TRUE(r.conclusive);
    EXPECT_EQ(r.generators.size(), static_cast<std::size_t>(m));
    for (const auto& blk : r.blocks)
      if (blk.k > 0) {
        EXPECT_TRUE(proportional(blk.cls, super_generator(spec, blk.k)).has_value()) << blk.cls.to_string();
      }
  }
}

TEST(Obstruction, Soundness) {
  auto spec = DeformationSpec::resonant(Flavor::classical, 4);
  auto d = build_infinitesimal<DiffOp>(spec);
  auto r = obstruction_classes(d);
  auto defect = defect_cochain(d);
  for (const auto& blk : r.blocks) {
    for (const auto& [mono, coeff] : blk.cls.terms()) {
      Cochain2<DiffOp> rebuilt = coeff * cocycle_Phi(blk.basis->k);
      for (const auto& [wm, w] : blk.witness)
        if (wm == mono) rebuilt += d1(w);
      EXPECT_EQ(rebuilt, block_cochain<DiffOp>(defect, mono, blk.block));
    }
  }
}

TEST(Obstruction, RecordsConcordance) {
  auto spec = DeformationSpec::resonant(Flavor::classical, 3);
  auto r = obstruction_classes(build_infinitesimal<DiffOp>(spec));
  for (const auto& blk : r.blocks)
    if (blk.k > 0) {
      ASSERT_TRUE(blk.printed.has_value());
      EXPECT_EQ(blk.concordant, proportional(blk.cls, *blk.printed).has_value());
      EXPECT_EQ(*blk.printed, printed_condition(spec, blk.k));
    }
}

TEST(Obstruction, RefusesNumericAction) {
  auto spec = DeformationSpec::resonant(Flavor::classical, 3);
  ParamAssignment p{{"a0", Rational(1)}};
  EXPECT_THROW(obstruction_classes(build_infinitesimal<DiffOp>(spec).substituted(p)), UsageError);
}

TEST(PrintedConditions, Evaluation) {
  auto spec = DeformationSpec::resonant(Flavor::classical, 3);
  spec.params = {{"a0", Rational(1)}, {"a2", Rational(1)}, {"b2", Rational(1)}, {"c2", Rational(0)}};
  auto v = check_printed_conditions(spec);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].value, ParamScalar(Rational(2)));
  EXPECT_FALSE(v[0].satisfied);
}

TEST(PrintedConditions, MissingAssignment) {
  auto spec = DeformationSpec::resonant(Flavor::classical, 3);
  spec.params = {{"a0", Rational(1)}};
  EXPECT_THROW(check_printed_conditions(spec), UsageError);
}

TEST(PrintedConditions, SuperOddStaysFormal) {
  auto spec = DeformationSpec::resonant(Flavor::super, 1);
  spec.params = {{"a0", Rational(2)}, {"a1", Rational(2)}};
  auto v = check_printed_conditions(spec);
  ASSERT_EQ(v.size(), 1u);
  // b1 a1 - c1 a0 + c1 a1 at a0 = a1 = 2
  EXPECT_EQ(v[0].value, ParamScalar(Rational(2)) * sym(spec, "b1"));
  EXPECT_FALSE(v[0].satisfied);
}

TEST(PrintedConditions, OutsideResonance) {
  EXPECT_THROW(printed_condition(DeformationSpec::generic(Flavor::classical, Rational(1, 3)), 1), UsageError);
  EXPECT_THROW(printed_condition(DeformationSpec::resonant(Flavor::classical, 3), 1), UsageError);
}

TEST(Proportional, Cases) {
  auto s = DeformationSpec::resonant(Flavor::classical, 3);
  ParamScalar x = sym(s, "a0") * sym(s, "b2") - sym(s, "c2") * sym(s, "a2");
  EXPECT_EQ(proportional(ParamScalar(Rational(-3)) * x, x), Rational(-3));
  EXPECT_FALSE(proportional(x + sym(s, "a1") * sym(s, "a1"), x).has_value());
  EXPECT_FALSE(proportional(ParamScalar(s.alphabet()), x).has_value());
}

TEST(Flatness, VanishingPoint) {
  auto spec = DeformationSpec::resonant(Flavor::classical, 3);
  ParamAssignment p;
  for (const auto& s : symbols_of(spec)) p[s.name] = Rational(0);
  p["a0"] = Rational(1);
  p["a2"] = Rational(3);
  p["b2"] = Rational(1);
  p["c2"] = Rational(3);
  EXPECT_TRUE(verify_homomorphism(build_infinitesimal<DiffOp>(spec).substituted(p)).pass);
  p["c2"] = Rational(-1);
  EXPECT_FALSE(verify_homomorphism(build_infinitesimal<DiffOp>(spec).substituted(p)).pass);
}

TEST(Flatness, Super) {
  auto spec = DeformationSpec::resonant(Flavor::super, 2);
  ParamAssignment p;
  for (const auto& s : symbols_of(spec))
    if (s.parity == Parity::even) p[s.name] = Rational(0);
  EXPECT_TRUE(verify_homomorphism(build_infinitesimal<SuperDiffOp>(spec).substituted(p)).pass);
  p["a1"] = Rational(1);
  EXPECT_FALSE(verify_homomorphism(build_infinitesimal<SuperDiffOp>(spec).substituted(p)).pass);
}

TEST(OneParameterFamily, PrintedAndSolvedFamilies) {
  for (long m = 3; m <= 5; ++m) {
    std::vector<Rational> alphas;
    for (long j = 0; j < m; ++j) alphas.push_back(Rational(j * j + 1));
    auto r = example1_family(m, alphas);
    EXPECT_TRUE(r.solved_verdict.pass) << m;
    EXPECT_EQ(r.printed_verdict.pass, r.coincide) << m;
  }
}

TEST(OneParameterFamily, Coefficient) {
  auto r = example1_family(3, {Rational(1), Rational(0), Rational(5)});
  EXPECT_EQ(r.printed_c.at(2), Rational(5, 2));
  EXPECT_TRUE(r.solved_verdict.pass);
}

TEST(OneParameterFamily, Errors) {
  EXPECT_THROW(example1_family(3, {Rational(1), Rational(2)}), UsageError);
  EXPECT_THROW(example1_family(3, {Rational(1), Rational(0), Rational(1)}), UsageError);
}

namespace {

DeformedAction<DiffOp> generic_with_second_order(GradedSum<DiffOp>* gauge_out = nullptr) {
  auto spec = DeformationSpec::generic(Flavor::classical, Rational(5, 3));
  auto d = build_infinitesimal<DiffOp>(spec);
  const auto& g = d.rho0.algebra();
  const Rational w = spec.component_weight(0);
  const Monomial mono = Monomial::from_factors({{static_cast<std::uint32_t>(d.alphabet->index_of("a0")), 1},
                                                {static_cast<std::uint32_t>(d.alphabet->index_of("a1")), 1}});
  const DiffOp b = DiffOp::monomial(w, w, 1, 1);
  auto rho2 = d0(make_cochain0(g, b));
  Cochain1<GradedSum<DiffOp>> term(g, d.zero_value(), Parity::even);
  for (const auto& [t, v] : rho2.images()) {
    GradedOp<DiffOp> blk(spec.delta, spec.window);
    blk.add_block(0, 0, v);
    GradedSum<DiffOp> s = d.zero_value();
    s.add(mono, blk);
    term.add(t, s);
  }
  d.higher_terms.push_back(term);
  if (gauge_out) {
    GradedOp<DiffOp> blk(spec.delta, spec.window);
    blk.add_block(0, 0, -b);
    *gauge_out = d.zero_value();
    gauge_out->add(mono, blk);
  }
  return d;
}

}  // namespace

TEST(Gauge, IdentityGaugeIsNoOp) {
  auto d = build_infinitesimal<DiffOp>(DeformationSpec::resonant(Flavor::classical, 3));
  auto out = gauge_transform(d, {}, 3);
  EXPECT_EQ(out.first_order, d.first_order);
  EXPECT_TRUE(out.higher_terms.empty());
}

TEST(Gauge, RejectsDegreeZero) {
  auto d = build_infinitesimal<DiffOp>(DeformationSpec::resonant(Flavor::classical, 3));
  auto id = GradedSum<DiffOp>::constant(d.alphabet, GradedOp<DiffOp>::identity(d.spec.delta, d.spec.window));
  EXPECT_THROW(gauge_transform(d, {id}, 2), UsageError);
}

TEST(Gauge, TrivializeCoboundary) {
  GradedSum<DiffOp> expected;
  auto d = generic_with_second_order(&expected);
  auto r = trivialize_second_order(d);
  auto* ok = std::get_if<0>(&r);
  ASSERT_NE(ok, nullptr);
  EXPECT_EQ(ok->first, expected);
  EXPECT_TRUE(ok->second.higher_terms.empty());
  EXPECT_EQ(ok->second.first_order, d.first_order);
}

TEST(Gauge, FlatUnchanged) {
  auto d = build_infinitesimal<DiffOp>(DeformationSpec::generic(Flavor::classical, Rational(5, 3)));
  auto r = trivialize_second_order(d);
  auto* ok = std::get_if<0>(&r);
  ASSERT_NE(ok, nullptr);
  EXPECT_TRUE(ok->first.is_zero());
}

TEST(Gauge, NonvanishingClass) {
  auto d = build_infinitesimal<DiffOp>(DeformationSpec::resonant(Flavor::classical, 3));
  EXPECT_TRUE(std::holds_alternative<NotTrivializable>(trivialize_second_order(d)));
}

TEST(Gauge, ClassesInvariant) {
  auto spec = DeformationSpec::resonant(Flavor::classical, 3);
  auto d = build_infinitesimal<DiffOp>(spec);
  const auto& alpha = *d.alphabet;
  const Rational w = spec.component_weight(2);
  GradedOp<DiffOp> blk(spec.delta, spec.window);
  blk.add_block(2, 2, DiffOp::monomial(w, w, 1, 1, Rational(3)));
  GradedSum<DiffOp> t = d.zero_value();
  t.add(Monomial::symbol(static_cast<std::uint32_t>(alpha.index_of("a1"))), blk);
  auto moved = gauge_transform(d, {t}, 2);
  EXPECT_FALSE(moved.first_order == d.first_order);
  moved.higher_terms.clear();
  auto before = obstruction_classes(d);
  auto after = obstruction_classes(moved);
  std::map<BlockIndex, ParamScalar> cb, ca;
  for (const auto& x : before.blocks) cb.emplace(x.block, x.cls);
  for (const auto& x : after.blocks) ca.emplace(x.block, x.cls);
  for (const auto& [blkidx, cls] : ca) {
    if (cb.count(blkidx))
      EXPECT_EQ(cb.at(blkidx), cls);
    else
      EXPECT_TRUE(cls.is_zero());
  }
  for (const auto& [blkidx, cls] : cb) EXPECT_TRUE(ca.count(blkidx) || cls.is_zero());
}
