#include "symdef/deformation/deformation.hpp"

#include <set>

namespace symdef {

namespace {

std::string a_name(std::size_t j) { return "a" + std::to_string(j); }
std::string b_name(long k) { return "b" + std::to_string(k); }
std::string c_name(long k) { return "c" + std::to_string(k); }

template <NormalFormOperator Op>
typename OperatorTraits<Op>::Field field_of(const LieAlgebra& g, std::size_t i) {
  if constexpr (std::same_as<Op, DiffOp>)
    return g.vector_field(i);
  else
    return g.contact_field(i);
}

template <NormalFormOperator Op>
Flavor flavor_of() {
  return OperatorTraits<Op>::flavor;
}

/// Applies f to every image of a parameter-valued 1-cochain.
template <NormalFormOperator Op, class F>
Cochain1<GradedSum<Op>> map_images(const Cochain1<GradedSum<Op>>& c, const GradedSum<Op>& space, F f) {
  Cochain1<GradedSum<Op>> out(c.algebra(), space, c.parity());
  for (const auto& [t, v] : c.images()) out.add(t, f(v));
  return out;
}

template <NormalFormOperator Op>
void require_formal(const DeformedAction<Op>& d) {
  for (const auto& [t, v] : d.first_order.images())
    for (const auto& [m, op] : v.terms())
      if (m.degree() != 1) throw UsageError("obstruction calculus needs a first-order term linear in formal parameters");
}

}  // namespace

DeformationSpec DeformationSpec::resonant(Flavor flavor, long m, std::optional<std::size_t> window) {
  const long lowest = flavor == Flavor::classical ? 2 : 1;
  if (m < lowest) throw UsageError("m must be at least " + std::to_string(lowest) + " for this flavor");
  DeformationSpec s;
  s.flavor = flavor;
  s.delta = Rational(m, 2);
  s.window = window.value_or(default_window(m));
  return s;
}

DeformationSpec DeformationSpec::generic(Flavor flavor, const Rational& delta, std::optional<std::size_t> window) {
  DeformationSpec s;
  s.flavor = flavor;
  s.delta = delta;
  const Rational two = Rational(2) * delta;
  const long m = two.is_integer() ? two.to_long() : 0;
  s.window = window.value_or(default_window(m));
  return s;
}

std::optional<long> DeformationSpec::m() const {
  const Rational two = Rational(2) * delta;
  if (!two.is_integer()) return std::nullopt;
  const long m = two.to_long();
  if (m >= (flavor == Flavor::classical ? 2 : 1)) return m;
  return std::nullopt;
}

std::pair<long, long> DeformationSpec::k_range() const {
  auto mm = m();
  if (!mm) return {1, 0};
  if (flavor == Flavor::classical) return {(*mm + 1) / 2, *mm - 1};
  return {1, *mm};
}

Rational DeformationSpec::component_weight(std::size_t j) const {
  const Rational jj(static_cast<long>(j));
  return flavor == Flavor::classical ? delta - jj : delta - jj / Rational(2);
}

BlockIndex DeformationSpec::off_diagonal_block(long k) const {
  const long m = this->m().value_or(0);
  if (flavor == Flavor::classical) return {static_cast<std::size_t>(k), static_cast<std::size_t>(m - k - 1)};
  return {static_cast<std::size_t>(m - 1 + k), static_cast<std::size_t>(m - k)};
}

AlphabetPtr DeformationSpec::alphabet() const {
  std::vector<Alphabet::Symbol> symbols;
  const Parity off = flavor == Flavor::classical ? Parity::even : Parity::odd;
  auto [lo, hi] = k_range();
  for (long k = lo; k <= hi; ++k) symbols.push_back({b_name(k), off});
  for (long k = lo; k <= hi; ++k) symbols.push_back({c_name(k), off});
  for (std::size_t j = 0; j <= window; ++j) symbols.push_back({a_name(j), Parity::even});
  return make_alphabet(std::move(symbols));
}

void DeformationSpec::validate() const {
  if (window == 0) throw UsageError("window must be positive");
  auto [lo, hi] = k_range();
  for (long k = lo; k <= hi; ++k) {
    auto [s, t] = off_diagonal_block(k);
    if (s > window || t > window)
      throw UsageError("window " + std::to_string(window) + " too small for the cocycle with k=" + std::to_string(k));
  }
  AlphabetPtr alpha = alphabet();
  for (const auto& [name, value] : params) {
    auto idx = alpha->find(name);
    if (!idx) throw UsageError("params." + name + ": unknown parameter");
    if (alpha->symbol(*idx).parity == Parity::odd && !value.is_zero())
      throw UsageError("params." + name + ": odd parameters stay formal (only 0 may be assigned)");
  }
}

template <NormalFormOperator Op>
GradedSum<Op> DeformedAction<Op>::zero_value(Parity p) const {
  return GradedSum<Op>(alphabet, GradedOp<Op>(spec.delta, spec.window), p);
}

template <NormalFormOperator Op>
GradedSum<Op> DeformedAction<Op>::action(std::size_t i) const {
  GradedSum<Op> out = rho0.at({i});
  out += first_order.at({i});
  for (const auto& h : higher_terms) out += h.at({i});
  return out;
}

template <NormalFormOperator Op>
DeformedAction<Op> DeformedAction<Op>::substituted(const ParamAssignment& assignment) const {
  DeformedAction out = *this;
  auto sub = [&](const GradedSum<Op>& v) { return substitute(v, assignment); };
  const GradedSum<Op> space = zero_value();
  out.first_order = map_images<Op>(first_order, space, sub);
  for (auto& h : out.higher_terms) h = map_images<Op>(h, space, sub);
  return out;
}

template <NormalFormOperator Op>
DeformedAction<Op> build_infinitesimal(const DeformationSpec& spec) {
  if (spec.flavor != flavor_of<Op>()) throw UsageError("deformation flavor does not match the operator type");
  spec.validate();
  const LieAlgebra& g = algebra_for<Op>();
  const std::size_t window = spec.window;
  const AlphabetPtr alpha = spec.alphabet();
  const GradedSum<Op> space(alpha, GradedOp<Op>(spec.delta, window));
  DeformedAction<Op> d{spec, alpha, Cochain1<GradedSum<Op>>(g, space, Parity::even),
                       Cochain1<GradedSum<Op>>(g, space, Parity::even), {}};

  for (std::size_t i = 0; i < g.size(); ++i)
    d.rho0.add({i}, GradedSum<Op>::constant(alpha, GradedOp<Op>::lie_derivative(field_of<Op>(g, i), spec.delta,
                                                                                  window, g.parity(i))));

  // (parameter, cochain, source, target) for every first-order term.
  struct Term {
    std::string param;
    Cochain1<Op> cocycle;
    std::size_t source, target;
  };
  std::vector<Term> terms;
  for (std::size_t j = 0; j <= window; ++j) {
    const Rational w = spec.component_weight(j);
    if constexpr (std::same_as<Op, DiffOp>)
      terms.push_back({a_name(j), cocycle_A(w), j, j});
    else
      terms.push_back({a_name(j), cocycle_Yprime(w), j, j});
  }
  auto [lo, hi] = spec.k_range();
  for (long k = lo; k <= hi; ++k) {
    auto [s, t] = spec.off_diagonal_block(k);
    const long m = *spec.m();
    if constexpr (std::same_as<Op, DiffOp>) {
      terms.push_back({b_name(k), cocycle_B(m, k), s, t});
      terms.push_back({c_name(k), cocycle_C(m, k), s, t});
    } else {
      terms.push_back({b_name(k), cocycle_Y(k), s, t});
      terms.push_back({c_name(k), cocycle_Ytilde(k), s, t});
    }
  }

  for (std::size_t i = 0; i < g.size(); ++i) {
    GradedSum<Op> value(alpha, GradedOp<Op>(spec.delta, window), g.parity(i));
    for (const auto& term : terms) {
      Op image = term.cocycle.at({i});
      if (image.is_zero()) continue;
      GradedOp<Op> block(spec.delta, window, image.parity());
      block.add_block(term.source, term.target, image);
      value.add(Monomial::symbol(static_cast<std::uint32_t>(alpha->index_of(term.param))), block);
    }
    d.first_order.add({i}, value);
  }
  return d;
}

template <NormalFormOperator Op>
GradedSum<Op> bracket_defect(const DeformedAction<Op>& d, std::size_t i, std::size_t j) {
  const LieAlgebra& g = d.rho0.algebra();
  GradedSum<Op> out = supercommutator(d.action(i), d.action(j));
  for (const auto& [k, coef] : g.bracket(i, j)) out -= coef * d.action(k);
  return out;
}

template <NormalFormOperator Op>
Cochain2<GradedSum<Op>> defect_cochain(const DeformedAction<Op>& d) {
  const LieAlgebra& g = d.rho0.algebra();
  Cochain2<GradedSum<Op>> out(g, d.zero_value(), Parity::even);
  for (const auto& t : Cochain2<GradedSum<Op>>::canonical_tuples(g)) out.add(t, bracket_defect(d, t[0], t[1]));
  return out;
}

template <NormalFormOperator Op>
HomomorphismVerdict verify_homomorphism(const DeformedAction<Op>& d) {
  const LieAlgebra& g = d.rho0.algebra();
  HomomorphismVerdict out;
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = 0; j < g.size(); ++j) {
      GradedSum<Op> r = bracket_defect(d, i, j);
      if (r.is_zero()) continue;
      out.pass = false;
      out.first = i;
      out.second = j;
      out.residual = r.to_string();
      std::set<BlockIndex> blocks;
      for (const auto& [m, v] : r.terms())
        for (const auto& [b, op] : v.blocks()) blocks.insert(b);
      out.residual_blocks.assign(blocks.begin(), blocks.end());
      return out;
    }
  return out;
}

template <NormalFormOperator Op>
Cochain2<Op> block_cochain(const Cochain2<GradedSum<Op>>& defect, const Monomial& m, const BlockIndex& block) {
  const auto& space = defect.space().space();
  const Parity pm = m.parity(*defect.space().alphabet()) + defect.parity();
  Cochain2<Op> out(defect.algebra(), Op::zero(space.weight(block.first), space.weight(block.second)), pm);
  for (const auto& [t, v] : defect.images()) out.add(t, v.coefficient(m).block(block.first, block.second));
  return out;
}

template <NormalFormOperator Op>
Cochain1<Op> block_cochain(const Cochain1<GradedSum<Op>>& c, const Monomial& m, const BlockIndex& block) {
  const auto& space = c.space().space();
  const Parity pm = m.parity(*c.space().alphabet()) + c.parity();
  Cochain1<Op> out(c.algebra(), Op::zero(space.weight(block.first), space.weight(block.second)), pm);
  for (const auto& [t, v] : c.images()) out.add(t, v.coefficient(m).block(block.first, block.second));
  return out;
}

std::optional<Rational> proportional(const ParamScalar& a, const ParamScalar& b) {
  if (a.is_zero() && b.is_zero()) return Rational(1);
  if (a.is_zero() || b.is_zero()) return std::nullopt;
  const auto& [m, cb] = *b.terms().begin();
  const Rational r = a.coefficient(m) / cb;
  if (r.is_zero()) return std::nullopt;
  ParamScalar scaled = b;
  scaled *= r;
  if (!(scaled == a)) return std::nullopt;
  return r;
}

ParamScalar printed_condition(const DeformationSpec& spec, long k) {
  auto mm = spec.m();
  if (!mm) throw UsageError("printed conditions exist only in the resonant case");
  auto [lo, hi] = spec.k_range();
  if (k < lo || k > hi) throw UsageError("k outside the range of the printed conditions");
  const long m = *mm;
  const AlphabetPtr alpha = spec.alphabet();
  auto sym = [&](const std::string& name) { return ParamScalar::symbol(alpha, name); };
  if (spec.flavor == Flavor::classical) {
    // (2k-m+1) b_k a_{m-k-1} + c_k a_k - c_k a_{m-k-1}
    const std::size_t low = static_cast<std::size_t>(m - k - 1);
    ParamScalar out = ParamScalar(Rational(2 * k - m + 1)) * sym(b_name(k)) * sym(a_name(low));
    out += sym(c_name(k)) * sym(a_name(static_cast<std::size_t>(k)));
    out -= sym(c_name(k)) * sym(a_name(low));
    return out;
  }
  // b_k A_{1-k} - c_k A_k + c_k A_{1-k}, with A_s (twice-weight label) on component m - s.
  const std::size_t src = static_cast<std::size_t>(m - 1 + k);
  const std::size_t tgt = static_cast<std::size_t>(m - k);
  ParamScalar out = sym(b_name(k)) * sym(a_name(src));
  out -= sym(c_name(k)) * sym(a_name(tgt));
  out += sym(c_name(k)) * sym(a_name(src));
  return out;
}

template <NormalFormOperator Op>
ObstructionReport<Op> obstruction_classes(const DeformedAction<Op>& d, const std::optional<BoundsSpec>& bounds_in) {
  if (!d.higher_terms.empty()) throw UsageError("obstruction_classes expects a purely infinitesimal deformation");
  require_formal(d);
  const DeformationSpec& spec = d.spec;
  const Cochain2<GradedSum<Op>> defect = defect_cochain(d);
  ObstructionReport<Op> report;

  std::set<BlockIndex> blocks;
  std::set<Monomial> quadratic;
  for (const auto& [t, v] : defect.images())
    for (const auto& [m, op] : v.terms()) {
      if (m.degree() < 2) report.linear_part_vanishes = false;
      if (m.degree() == 2) quadratic.insert(m);
      for (const auto& [b, block] : op.blocks()) blocks.insert(b);
    }
  if (!report.linear_part_vanishes) throw InvariantViolation("first-order defect is nonzero: a catalog cocycle failed");

  BoundsSpec widest{1, 1};
  for (const auto& block : blocks) {
    ObstructionBlock<Op> entry;
    entry.block = block;
    entry.cls = ParamScalar(d.alphabet);
    const Rational ws = spec.component_weight(block.first);
    const Rational wt = spec.component_weight(block.second);

    std::vector<Cochain2<Op>> basis;
    if constexpr (std::same_as<Op, DiffOp>) {
      const Rational kappa = wt - ws;
      if (kappa.is_integer() && kappa.sign() > 0 && ws == (Rational(1) - kappa) / Rational(2)) {
        entry.basis = CatalogId{Family::Phi, {}, 0, kappa.to_long()};
        basis.push_back(cocycle_Phi(kappa.to_long()));
      }
    } else {
      const Rational kk = Rational(2) * wt;
      if (kk.is_integer() && kk.sign() > 0 && ws == (Rational(1) - kk) / Rational(2)) {
        entry.basis = CatalogId{Family::Omega, {}, 0, kk.to_long()};
        basis.push_back(cocycle_Omega(kk.to_long()));
      }
    }
    auto [lo, hi] = spec.k_range();
    for (long k = lo; k <= hi; ++k)
      if (spec.off_diagonal_block(k) == block) entry.k = k;

    for (const auto& m : quadratic) {
      Cochain2<Op> target = block_cochain<Op>(defect, m, block);
      if (target.is_zero()) continue;
      const BoundsSpec bounds = bounds_in.value_or(default_bounds(target));
      widest = {std::max(widest.max_operator_order, bounds.max_operator_order),
                std::max(widest.max_coefficient_degree, bounds.max_coefficient_degree)};
      auto dec = decompose_on_classes(target, basis, bounds);
      if (!dec) {
        entry.decomposed = false;
        report.conclusive = false;
        continue;
      }
      if (!basis.empty() && !dec->coefficients[0].is_zero())
        entry.cls += ParamScalar::monomial(d.alphabet, m, dec->coefficients[0]);
      if (!dec->witness.is_zero()) entry.witness.emplace_back(m, dec->witness);
    }
    if (entry.k > 0) {
      entry.printed = printed_condition(spec, entry.k);
      entry.scalar = proportional(entry.cls, *entry.printed);
      entry.concordant = entry.scalar.has_value();
    }
    if (!entry.cls.is_zero()) report.generators.push_back(entry.cls);
    report.blocks.push_back(std::move(entry));
  }
  report.bounds = bounds_in.value_or(widest);
  return report;
}

std::vector<ConditionVerdict> check_conditions(const DeformationSpec& spec,
                                               const std::vector<std::pair<long, ParamScalar>>& generators) {
  spec.validate();
  const AlphabetPtr alpha = spec.alphabet();
  std::set<std::string> missing;
  for (const auto& [k, gen] : generators)
    for (const auto& [m, c] : gen.terms())
      for (const auto& [idx, e] : m.factors()) {
        const auto& s = alpha->symbol(idx);
        if (s.parity == Parity::even && !spec.params.count(s.name)) missing.insert(s.name);
      }
  if (!missing.empty()) {
    std::string list;
    for (const auto& n : missing) list += (list.empty() ? "" : ", ") + n;
    throw UsageError("params: missing values for " + list);
  }
  std::vector<ConditionVerdict> out;
  for (const auto& [k, gen] : generators) {
    ParamScalar value = param_substitute(gen, spec.params);
    out.push_back({k, gen, value, value.is_zero()});
  }
  return out;
}

std::vector<ConditionVerdict> check_printed_conditions(const DeformationSpec& spec) {
  std::vector<std::pair<long, ParamScalar>> gens;
  auto [lo, hi] = spec.k_range();
  for (long k = lo; k <= hi; ++k) gens.emplace_back(k, printed_condition(spec, k));
  return check_conditions(spec, gens);
}

namespace {

DeformedAction<DiffOp> one_parameter(const DeformedAction<DiffOp>& d, const std::map<std::string, ParamScalar>& images,
                                     const AlphabetPtr& t_alpha) {
  DeformedAction<DiffOp> out = d;
  out.alphabet = t_alpha;
  const GradedSum<DiffOp> space(t_alpha, GradedOp<DiffOp>(d.spec.delta, d.spec.window));
  out.rho0 = map_images<DiffOp>(d.rho0, space, [&](const GradedSum<DiffOp>& v) {
    return reparametrize(v, images, t_alpha);
  });
  out.first_order = map_images<DiffOp>(d.first_order, space, [&](const GradedSum<DiffOp>& v) {
    return reparametrize(v, images, t_alpha);
  });
  out.higher_terms.clear();
  return out;
}

}  // namespace

Example1Report example1_family(long m, const std::vector<Rational>& alphas, const std::optional<BoundsSpec>& bounds) {
  DeformationSpec spec = DeformationSpec::resonant(Flavor::classical, m);
  if (alphas.size() < static_cast<std::size_t>(m))
    throw UsageError("example1 needs at least m alphas (alpha_0 .. alpha_{m-1})");
  if (alphas.size() > spec.window + 1) throw UsageError("more alphas than window components");
  Example1Report rep;
  rep.m = m;
  rep.alphas = alphas;
  auto [lo, hi] = spec.k_range();
  for (long k = lo; k <= hi; ++k) {
    const Rational ak = alphas[static_cast<std::size_t>(k)];
    const Rational al = alphas[static_cast<std::size_t>(m - k - 1)];
    if (ak == al) throw UsageError("example1 requires alpha_k != alpha_{m-k-1} for k=" + std::to_string(k));
    rep.printed_c[k] = Rational(2 * k - m + 1) * ak / (ak - al);
  }

  const DeformedAction<DiffOp> d = build_infinitesimal<DiffOp>(spec);
  const ObstructionReport<DiffOp> obs = obstruction_classes(d, bounds);
  for (const auto& b : obs.blocks)
    if (b.k > 0) rep.engine_generators.emplace_back(b.k, b.cls);

  // Engine-solved c_k: generator evaluated at a = alpha, b_k = 1, c_k = gamma is affine in gamma.
  for (long k = lo; k <= hi; ++k) {
    ParamScalar gen(spec.alphabet());
    for (const auto& [kk, g] : rep.engine_generators)
      if (kk == k) gen = g;
    auto eval = [&](const Rational& gamma) {
      ParamAssignment p;
      for (std::size_t j = 0; j <= spec.window; ++j)
        p["a" + std::to_string(j)] = j < alphas.size() ? alphas[j] : Rational(0);
      for (long kk = lo; kk <= hi; ++kk) {
        p[b_name(kk)] = Rational(kk == k ? 1 : 0);
        p[c_name(kk)] = kk == k ? gamma : Rational(0);
      }
      return param_substitute(gen, p).constant_term();
    };
    const Rational g0 = eval(Rational(0)), g1 = eval(Rational(1));
    if (eval(Rational(2)) - g1 != g1 - g0) throw InvariantViolation("engine generator is not affine in c_k");
    if (g1 == g0) {
      if (!g0.is_zero()) throw InvariantViolation("engine condition cannot be solved for c_k");
      rep.solved_c[k] = Rational(0);
    } else {
      rep.solved_c[k] = -g0 / (g1 - g0);
    }
  }

  const AlphabetPtr t_alpha = make_alphabet({{"t", Parity::even}});
  const ParamScalar t = ParamScalar::symbol(t_alpha, "t");
  auto family = [&](const std::map<long, Rational>& cs) {
    std::map<std::string, ParamScalar> images;
    for (std::size_t j = 0; j <= spec.window; ++j)
      images["a" + std::to_string(j)] = ParamScalar(j < alphas.size() ? alphas[j] : Rational(0)) * t;
    for (long k = lo; k <= hi; ++k) {
      images[b_name(k)] = t;
      images[c_name(k)] = ParamScalar(cs.at(k)) * t;
    }
    return one_parameter(d, images, t_alpha);
  };
  rep.printed_verdict = verify_homomorphism(family(rep.printed_c));
  rep.solved_verdict = verify_homomorphism(family(rep.solved_c));
  rep.coincide = rep.printed_c == rep.solved_c;
  return rep;
}

template <NormalFormOperator Op>
DeformedAction<Op> gauge_transform(const DeformedAction<Op>& d, const std::vector<GradedSum<Op>>& ts,
                                   std::uint32_t truncation_order) {
  const GradedSum<Op> space = d.zero_value();
  GradedSum<Op> n = space;
  for (const auto& t : ts) {
    if (t.is_zero()) continue;
    if (t.parity() != Parity::even) throw UsageError("gauge terms must be even");
    for (const auto& [m, v] : t.terms())
      if (m.degree() == 0) throw UsageError("gauge terms must have positive parameter degree");
    n += t;
  }
  const GradedSum<Op> id = GradedSum<Op>::constant(d.alphabet, GradedOp<Op>::identity(d.spec.delta, d.spec.window));
  const GradedSum<Op> u = id + n;
  // U^{-1} = sum_k (-N)^k, truncated.
  GradedSum<Op> inv = id, power = id;
  for (std::uint32_t k = 1; k <= truncation_order; ++k) {
    power = compose(power, -n).truncated(truncation_order);
    if (power.is_zero()) break;
    inv += power;
  }

  DeformedAction<Op> out = d;
  const LieAlgebra& g = d.rho0.algebra();
  out.first_order = Cochain1<GradedSum<Op>>(g, space, Parity::even);
  out.higher_terms.assign(truncation_order >= 2 ? truncation_order - 1 : 0,
                          Cochain1<GradedSum<Op>>(g, space, Parity::even));
  for (std::size_t i = 0; i < g.size(); ++i) {
    GradedSum<Op> conj = compose(compose(inv, d.action(i)), u).truncated(truncation_order);
    if (!(conj.degree_part(0) == d.rho0.at({i}))) throw InvariantViolation("gauge changed the undeformed action");
    out.first_order.add({i}, conj.degree_part(1));
    for (std::uint32_t deg = 2; deg <= truncation_order; ++deg) out.higher_terms[deg - 2].add({i}, conj.degree_part(deg));
  }
  while (!out.higher_terms.empty() && out.higher_terms.back().is_zero()) out.higher_terms.pop_back();
  return out;
}

template <NormalFormOperator Op>
Trivialization<Op> trivialize_second_order(const DeformedAction<Op>& d, const std::optional<BoundsSpec>& bounds) {
  require_formal(d);
  const GradedSum<Op> space = d.zero_value();
  const LieAlgebra& g = d.rho0.algebra();
  DeformedAction<Op> infinitesimal = d;
  infinitesimal.higher_terms.clear();
  for (const auto& blk : obstruction_classes(infinitesimal, bounds).blocks)
    if (!blk.cls.is_zero()) return NotTrivializable{"nonvanishing obstruction class " + blk.cls.to_string()};

  Cochain1<GradedSum<Op>> rho2 = d.higher_terms.empty() ? Cochain1<GradedSum<Op>>(g, space, Parity::even)
                                                         : d.higher_terms.front();
  Cochain2<GradedSum<Op>> second(g, space, Parity::even);
  const Cochain2<GradedSum<Op>> defect = defect_cochain(d);
  for (const auto& [t, v] : defect.images()) second.add(t, v.degree_part(2));
  if (!second.is_zero()) return NotTrivializable{"second-order homomorphism defect is nonzero"};

  std::set<Monomial> monomials;
  std::set<BlockIndex> blocks;
  for (const auto& [t, v] : rho2.images())
    for (const auto& [m, op] : v.terms()) {
      monomials.insert(m);
      for (const auto& [b, blk] : op.blocks()) blocks.insert(b);
    }
  GradedSum<Op> gauge = space;
  for (const auto& m : monomials)
    for (const auto& b : blocks) {
      Cochain1<Op> c = block_cochain<Op>(rho2, m, b);
      if (c.is_zero()) continue;
      if (!d1(c).is_zero()) return NotTrivializable{"second-order term is not a cocycle on a block"};
      auto solved = coboundary_solve(c, bounds);
      if (std::holds_alternative<NoSolutionWithinBounds>(solved))
        return NotTrivializable{"second-order term carries a nonzero class on block " + std::to_string(b.first) +
                                "->" + std::to_string(b.second)};
      const Op bm = std::get<Witness<Op, 1>>(solved).b.at({});
      GradedOp<Op> blk(d.spec.delta, d.spec.window, bm.parity());
      blk.add_block(b.first, b.second, -bm);
      gauge.add(m, blk);
    }
  if (gauge.is_zero()) return std::make_pair(gauge, d);
  const std::uint32_t order = static_cast<std::uint32_t>(std::max<std::size_t>(2, d.higher_terms.size() + 1));
  DeformedAction<Op> out = gauge_transform(d, {gauge}, order);
  if (!out.higher_terms.empty() && !out.higher_terms.front().is_zero())
    throw InvariantViolation("gauge did not remove the second-order term");
  return std::make_pair(gauge, out);
}

#define SYMDEF_INSTANTIATE_DEFORMATION(OP)                                                                        \
  template struct DeformedAction<OP>;                                                                             \
  template DeformedAction<OP> build_infinitesimal<OP>(const DeformationSpec&);                                    \
  template GradedSum<OP> bracket_defect(const DeformedAction<OP>&, std::size_t, std::size_t);                     \
  template Cochain2<GradedSum<OP>> defect_cochain(const DeformedAction<OP>&);                                     \
  template HomomorphismVerdict verify_homomorphism(const DeformedAction<OP>&);                                    \
  template Cochain2<OP> block_cochain(const Cochain2<GradedSum<OP>>&, const Monomial&, const BlockIndex&);        \
  template Cochain1<OP> block_cochain(const Cochain1<GradedSum<OP>>&, const Monomial&, const BlockIndex&);        \
  template ObstructionReport<OP> obstruction_classes(const DeformedAction<OP>&, const std::optional<BoundsSpec>&); \
  template DeformedAction<OP> gauge_transform(const DeformedAction<OP>&, const std::vector<GradedSum<OP>>&,       \
                                              std::uint32_t);                                                     \
  template Trivialization<OP> trivialize_second_order(const DeformedAction<OP>&, const std::optional<BoundsSpec>&);

SYMDEF_INSTANTIATE_DEFORMATION(DiffOp)
SYMDEF_INSTANTIATE_DEFORMATION(SuperDiffOp)

}  // namespace symdef
