#include "symdef/cohomology/solve.hpp"

#include <regex>
#include <set>

namespace symdef {

void BoundsSpec::validate() const {
  if (max_operator_order == 0 || max_coefficient_degree == 0) throw UsageError("bounds must be positive");
}

BoundsSpec BoundsSpec::parse(const std::string& text) {
  static const std::regex shape(R"(^\s*(\d+)\s*,\s*(\d+)\s*$)");
  std::smatch m;
  if (!std::regex_match(text, m, shape)) throw UsageError("bounds must look like ORDER,DEGREE");
  BoundsSpec b{std::stoul(m[1].str()), std::stoul(m[2].str())};
  b.validate();
  return b;
}

std::string BoundsSpec::to_string() const {
  return std::to_string(max_operator_order) + "," + std::to_string(max_coefficient_degree);
}

BoundsSpec default_bounds(std::size_t order, const Rational& lambda, const Rational& mu) {
  const Rational two_delta = Rational(2) * (mu - lambda);
  const std::size_t n = order + 2 + static_cast<std::size_t>(abs(two_delta).ceil()) + 2;
  return {n, 2 * n + 4};
}

Rational term_weight(Flavor flavor, const OpTerm& t, const Rational& lambda, const Rational& mu) {
  const Rational n(static_cast<long>(t.xdeg));
  const Rational j(static_cast<long>(t.power));
  if (flavor == Flavor::classical) return n - j + mu - lambda;
  return n + Rational(t.theta, 2) - j / Rational(2) + mu - lambda;
}

namespace {

template <NormalFormOperator Op>
Op make_op(const Rational& lambda, const Rational& mu, const OpCoordinates& coords, Parity parity) {
  if constexpr (std::same_as<Op, DiffOp>)
    return DiffOp::from_coordinates(lambda, mu, coords);
  else
    return SuperDiffOp::from_coordinates(lambda, mu, coords, parity);
}

template <std::size_t P>
Rational tuple_weight(const LieAlgebra& g, const std::array<std::size_t, P>& t) {
  Rational s;
  for (auto i : t) s += g.weight(i);
  return s;
}

template <std::size_t P>
Rational max_tuple_weight(const LieAlgebra& g) {
  if constexpr (P == 0) {
    return Rational(0);
  } else {
    // Dummy space; only the tuples matter.
    using C = Cochain<DiffOp, P>;
    Rational best(-1000);
    for (const auto& t : C::canonical_tuples(g)) best = std::max(best, tuple_weight<P>(g, t));
    return best;
  }
}

Rational lattice_step(Flavor f) { return f == Flavor::classical ? Rational(1) : Rational(1, 2); }

template <NormalFormOperator Op, std::size_t P>
using Basis = std::vector<std::pair<typename Cochain<Op, P>::Tuple, OpTerm>>;

/// Columns: coordinates of d(e) for each basis cochain e.
template <NormalFormOperator Op, std::size_t P>
std::vector<std::map<CochainKey, Rational>> differential_columns(const LieAlgebra& g, const Rational& lambda,
                                                                 const Rational& mu, Parity parity,
                                                                 const Basis<Op, P>& basis,
                                                                 const SignConvention& sc) {
  std::vector<std::map<CochainKey, Rational>> cols;
  cols.reserve(basis.size());
  for (const auto& [t, term] : basis)
    cols.push_back(cochain_coordinates(differential(basis_cochain<Op, P>(g, lambda, mu, parity, t, term), sc)));
  return cols;
}

/// Dense matrix from sparse columns; extra_keys rows are appended.
struct Assembled {
  QMatrix matrix;
  std::map<CochainKey, std::size_t> row_of;
};

Assembled assemble(const std::vector<std::map<CochainKey, Rational>>& cols,
                   const std::vector<std::map<CochainKey, Rational>>& extra = {}) {
  Assembled out;
  auto index = [&](const CochainKey& k) {
    auto [it, inserted] = out.row_of.try_emplace(k, out.row_of.size());
    return it->second;
  };
  for (const auto& c : cols)
    for (const auto& [k, v] : c) index(k);
  for (const auto& c : extra)
    for (const auto& [k, v] : c) index(k);
  out.matrix = QMatrix(out.row_of.size(), cols.size() + extra.size());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (const auto& [k, v] : cols[j]) out.matrix(out.row_of.at(k), j) = v;
  for (std::size_t j = 0; j < extra.size(); ++j)
    for (const auto& [k, v] : extra[j]) out.matrix(out.row_of.at(k), cols.size() + j) = v;
  return out;
}

template <NormalFormOperator Op, std::size_t P>
Cochain<Op, P> combine(const LieAlgebra& g, const Rational& lambda, const Rational& mu, Parity parity,
                       const Basis<Op, P>& basis, const QVector& x) {
  Cochain<Op, P> out(g, Op::zero(lambda, mu), parity);
  for (std::size_t j = 0; j < basis.size(); ++j)
    if (!x[j].is_zero())
      out += x[j] * basis_cochain<Op, P>(g, lambda, mu, parity, basis[j].first, basis[j].second);
  return out;
}

/// Solves d(b) = target on the given basis of (P-1)-cochains.
template <NormalFormOperator Op, std::size_t P>
std::optional<Cochain<Op, P - 1>> solve_on(const Cochain<Op, P>& target, const Basis<Op, P - 1>& basis,
                                           const SignConvention& sc) {
  const auto& g = target.algebra();
  const Rational& lambda = target.space().source_weight();
  const Rational& mu = target.space().target_weight();
  auto cols = differential_columns<Op, P - 1>(g, lambda, mu, target.parity(), basis, sc);
  auto rhs_coords = cochain_coordinates(target);
  Assembled a = assemble(cols, {rhs_coords});
  QMatrix m(a.matrix.rows(), cols.size());
  QVector rhs(a.matrix.rows());
  for (std::size_t r = 0; r < a.matrix.rows(); ++r) {
    for (std::size_t j = 0; j < cols.size(); ++j) m(r, j) = a.matrix(r, j);
    rhs[r] = a.matrix(r, cols.size());
  }
  auto solved = solve_linear_system(m, rhs);
  if (std::holds_alternative<NoSolution>(solved)) return std::nullopt;
  return combine<Op, P - 1>(g, lambda, mu, target.parity(), basis, std::get<LinearSolution>(solved).particular);
}

template <NormalFormOperator Op, std::size_t P>
std::size_t differential_rank(const LieAlgebra& g, const Rational& lambda, const Rational& mu, Parity parity,
                              const Basis<Op, P>& basis, const SignConvention& sc) {
  if (basis.empty()) return 0;
  auto cols = differential_columns<Op, P>(g, lambda, mu, parity, basis, sc);
  Assembled a = assemble(cols);
  if (a.matrix.rows() == 0) return 0;
  return rank(a.matrix);
}

template <NormalFormOperator Op, std::size_t P>
void fill_dims(CohomologyDim& out, const Rational& lambda, const Rational& mu, const BoundsSpec& bounds,
               const SignConvention& sc, bool record) {
  const LieAlgebra& g = algebra_for<Op>();
  const Flavor flavor = OperatorTraits<Op>::flavor;
  const Rational step = lattice_step(flavor);
  const Rational delta = mu - lambda;
  const Rational sigma = std::max(max_tuple_weight<P>(g), max_tuple_weight<P - 1>(g));
  const Rational n_order(static_cast<long>(bounds.max_operator_order));
  const Rational lo = delta - n_order * step - sigma;
  const Rational hi = Rational(static_cast<long>(bounds.max_coefficient_degree)) - n_order * step + delta - sigma;
  std::size_t total = 0;
  std::vector<Parity> parities{Parity::even};
  if (flavor == Flavor::super) parities.push_back(Parity::odd);
  for (Parity parity : parities)
    for (Rational w = lo; w <= hi; w += step) {
      auto basis_p = truncated_basis<Op, P>(g, lambda, mu, parity, bounds, w);
      if (basis_p.empty()) continue;
      auto basis_q = truncated_basis<Op, P - 1>(g, lambda, mu, parity, bounds, w);
      const std::size_t rank_p = differential_rank<Op, P>(g, lambda, mu, parity, basis_p, sc);
      const std::size_t rank_q = differential_rank<Op, P - 1>(g, lambda, mu, parity, basis_q, sc);
      WeightRow row{parity, w, basis_p.size() - rank_p, rank_q, basis_p.size() - rank_p - rank_q};
      total += row.dim;
      if (record && row.dim > 0) out.table.push_back(row);
    }
  if (record) {
    out.dim = total;
    out.examined_up_to = hi;
  } else {
    out.dim_bumped = total;
    out.examined_up_to_bumped = hi;
  }
}

}  // namespace

template <NormalFormOperator Op, std::size_t P>
std::map<Rational, Cochain<Op, P>> weight_components(const Cochain<Op, P>& c) {
  const auto& g = c.algebra();
  const Rational& lambda = c.space().source_weight();
  const Rational& mu = c.space().target_weight();
  std::map<Rational, std::map<typename Cochain<Op, P>::Tuple, OpCoordinates>> parts;
  for (const auto& [t, v] : c.images()) {
    const Rational sigma = tuple_weight<P>(g, t);
    for (const auto& [term, q] : v.coordinates())
      parts[term_weight<Op>(term, lambda, mu) - sigma][t][term] = q;
  }
  std::map<Rational, Cochain<Op, P>> out;
  for (const auto& [w, images] : parts) {
    Cochain<Op, P> comp(g, c.space(), c.parity());
    for (const auto& [t, coords] : images) comp.add(t, make_op<Op>(lambda, mu, coords, c.image_parity(t)));
    out.emplace(w, std::move(comp));
  }
  return out;
}

template <NormalFormOperator Op, std::size_t P>
std::map<CochainKey, Rational> cochain_coordinates(const Cochain<Op, P>& c) {
  std::map<CochainKey, Rational> out;
  for (const auto& [t, v] : c.images())
    for (const auto& [term, q] : v.coordinates()) out.emplace(CochainKey{{t.begin(), t.end()}, term}, q);
  return out;
}

template <NormalFormOperator Op, std::size_t P>
Cochain<Op, P> basis_cochain(const LieAlgebra& g, const Rational& lambda, const Rational& mu, Parity parity,
                             const typename Cochain<Op, P>::Tuple& t, const OpTerm& term) {
  Cochain<Op, P> c(g, Op::zero(lambda, mu), parity);
  c.add(t, make_op<Op>(lambda, mu, {{term, Rational(1)}}, c.image_parity(t)));
  return c;
}

template <NormalFormOperator Op, std::size_t P>
std::vector<std::pair<typename Cochain<Op, P>::Tuple, OpTerm>> truncated_basis(
    const LieAlgebra& g, const Rational& lambda, const Rational& mu, Parity parity, const BoundsSpec& bounds,
    const std::optional<Rational>& weight) {
  const bool super = OperatorTraits<Op>::flavor == Flavor::super;
  Basis<Op, P> out;
  Cochain<Op, P> shape(g, Op::zero(lambda, mu), parity);
  for (const auto& t : Cochain<Op, P>::canonical_tuples(g)) {
    const int q = parity_bit(shape.image_parity(t));
    const Rational sigma = tuple_weight<P>(g, t);
    for (std::size_t j = 0; j <= bounds.max_operator_order; ++j)
      for (int eps = 0; eps <= (super ? 1 : 0); ++eps) {
        if (!super && q != 0) continue;
        if (super && static_cast<int>((static_cast<std::size_t>(eps) + j) % 2) != q) continue;
        if (weight) {
          // Solve term_weight - sigma = w for the x-degree.
          OpTerm probe{j, 0, eps};
          Rational n = *weight + sigma - term_weight<Op>(probe, lambda, mu);
          if (!n.is_integer() || n.sign() < 0 || n > Rational(static_cast<long>(bounds.max_coefficient_degree)))
            continue;
          out.emplace_back(t, OpTerm{j, static_cast<std::size_t>(n.to_long()), eps});
        } else {
          for (std::size_t n = 0; n <= bounds.max_coefficient_degree; ++n) out.emplace_back(t, OpTerm{j, n, eps});
        }
      }
  }
  return out;
}

template <NormalFormOperator Op, std::size_t P>
CoboundaryResult<Op, P> coboundary_solve(const Cochain<Op, P>& c, const std::optional<BoundsSpec>& bounds_in,
                                         SolveMode mode, const SignConvention& sc) {
  if (!differential(c, sc).is_zero()) throw UsageError("coboundary_solve: input is not a cocycle");
  const BoundsSpec bounds = bounds_in.value_or(default_bounds(c));
  bounds.validate();
  const auto& g = c.algebra();
  const Rational& lambda = c.space().source_weight();
  const Rational& mu = c.space().target_weight();
  Cochain<Op, P - 1> b(g, c.space(), c.parity());
  if (mode == SolveMode::monolithic) {
    if (!c.is_zero()) {
      auto basis = truncated_basis<Op, P - 1>(g, lambda, mu, c.parity(), bounds, std::nullopt);
      auto solved = solve_on<Op, P>(c, basis, sc);
      if (!solved) return NoSolutionWithinBounds{bounds};
      b = *solved;
    }
  } else {
    for (const auto& [w, comp] : weight_components(c)) {
      auto basis = truncated_basis<Op, P - 1>(g, lambda, mu, c.parity(), bounds, w);
      auto solved = solve_on<Op, P>(comp, basis, sc);
      if (!solved) return NoSolutionWithinBounds{bounds};
      b += *solved;
    }
  }
  if (!(differential(b, sc) == c)) throw InvariantViolation("coboundary witness failed the exact re-check");
  return Witness<Op, P>{std::move(b)};
}

template <NormalFormOperator Op, std::size_t P>
IndependenceResult classes_independent(const std::vector<Cochain<Op, P>>& cocycles, const BoundsSpec& bounds,
                                       const SignConvention& sc) {
  IndependenceResult out;
  if (cocycles.empty()) return out;
  bounds.validate();
  const auto& first = cocycles.front();
  const auto& g = first.algebra();
  const Rational& lambda = first.space().source_weight();
  const Rational& mu = first.space().target_weight();
  Parity parity = first.parity();
  std::set<Rational> weights;
  std::vector<std::map<CochainKey, Rational>> targets;
  for (const auto& c : cocycles) {
    first.check_compatible(c);
    if (!c.is_zero()) parity = c.parity();
    if (!differential(c, sc).is_zero()) throw UsageError("classes_independent: input is not a cocycle");
    for (const auto& [w, comp] : weight_components(c)) weights.insert(w);
    targets.push_back(cochain_coordinates(c));
  }
  Basis<Op, P - 1> basis;
  for (const auto& w : weights) {
    auto part = truncated_basis<Op, P - 1>(g, lambda, mu, parity, bounds, w);
    basis.insert(basis.end(), part.begin(), part.end());
  }
  auto cols = differential_columns<Op, P - 1>(g, lambda, mu, parity, basis, sc);
  Assembled a = assemble(cols, targets);
  for (const auto& v : nullspace_basis(a.matrix)) {
    bool touches = false;
    for (std::size_t i = 0; i < targets.size(); ++i) touches = touches || !v[cols.size() + i].is_zero();
    if (touches) {
      out.independent = false;
      for (std::size_t i = 0; i < targets.size(); ++i) out.relation.push_back(v[cols.size() + i]);
      break;
    }
  }
  return out;
}

template <NormalFormOperator Op, std::size_t P>
std::optional<ClassDecomposition<Op, P>> decompose_on_classes(const Cochain<Op, P>& target,
                                                             const std::vector<Cochain<Op, P>>& basis,
                                                             const BoundsSpec& bounds, const SignConvention& sc) {
  bounds.validate();
  const auto& g = target.algebra();
  const Rational& lambda = target.space().source_weight();
  const Rational& mu = target.space().target_weight();
  std::set<Rational> weights;
  for (const auto& [w, comp] : weight_components(target)) weights.insert(w);
  std::vector<std::size_t> used;
  std::vector<std::map<CochainKey, Rational>> extra;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (!same_space(basis[i].space(), target.space())) throw UsageError("basis cocycle on a different space");
    if (basis[i].is_zero() || basis[i].parity() != target.parity()) continue;
    used.push_back(i);
    for (const auto& [w, comp] : weight_components(basis[i])) weights.insert(w);
    extra.push_back(cochain_coordinates(basis[i]));
  }
  Basis<Op, P - 1> unknowns;
  for (const auto& w : weights) {
    auto part = truncated_basis<Op, P - 1>(g, lambda, mu, target.parity(), bounds, w);
    unknowns.insert(unknowns.end(), part.begin(), part.end());
  }
  auto cols = differential_columns<Op, P - 1>(g, lambda, mu, target.parity(), unknowns, sc);
  cols.insert(cols.end(), extra.begin(), extra.end());
  auto rhs_coords = cochain_coordinates(target);
  Assembled a = assemble(cols, {rhs_coords});
  const std::size_t n = cols.size();
  QMatrix m(a.matrix.rows(), n);
  QVector rhs(a.matrix.rows());
  for (std::size_t r = 0; r < a.matrix.rows(); ++r) {
    for (std::size_t j = 0; j < n; ++j) m(r, j) = a.matrix(r, j);
    rhs[r] = a.matrix(r, n);
  }
  auto solved = solve_linear_system(m, rhs);
  if (std::holds_alternative<NoSolution>(solved)) return std::nullopt;
  const QVector& x = std::get<LinearSolution>(solved).particular;
  ClassDecomposition<Op, P> out{std::vector<Rational>(basis.size()),
                                combine<Op, P - 1>(g, lambda, mu, target.parity(), unknowns, x)};
  Cochain<Op, P> check = differential(out.witness, sc);
  for (std::size_t u = 0; u < used.size(); ++u) {
    out.coefficients[used[u]] = x[unknowns.size() + u];
    if (!x[unknowns.size() + u].is_zero()) check += x[unknowns.size() + u] * basis[used[u]];
  }
  if (!(check == target)) throw InvariantViolation("class decomposition failed the exact re-check");
  return out;
}

CohomologyDim cohomology_dim(const Rational& lambda, const Rational& mu, int degree, AlgebraKind algebra,
                             const std::optional<BoundsSpec>& bounds_in, const SignConvention& sc) {
  if (degree != 1 && degree != 2) throw UsageError("cohomology_dim supports degree 1 or 2");
  CohomologyDim out;
  out.bounds = bounds_in.value_or(default_bounds(0, lambda, mu));
  out.bounds.validate();
  auto run = [&](const BoundsSpec& b, bool record) {
    if (algebra == AlgebraKind::sl2) {
      if (degree == 1)
        fill_dims<DiffOp, 1>(out, lambda, mu, b, sc, record);
      else
        fill_dims<DiffOp, 2>(out, lambda, mu, b, sc, record);
    } else {
      if (degree == 1)
        fill_dims<SuperDiffOp, 1>(out, lambda, mu, b, sc, record);
      else
        fill_dims<SuperDiffOp, 2>(out, lambda, mu, b, sc, record);
    }
  };
  run(out.bounds, true);
  run(out.bounds.bumped(), false);
  out.stabilized = out.dim == out.dim_bumped;
  return out;
}

#define SYMDEF_INSTANTIATE(OP, P)                                                                                   \
  template std::map<Rational, Cochain<OP, P>> weight_components(const Cochain<OP, P>&);                           \
  template std::map<CochainKey, Rational> cochain_coordinates(const Cochain<OP, P>&);                              \
  template Cochain<OP, P> basis_cochain<OP, P>(const LieAlgebra&, const Rational&, const Rational&, Parity,        \
                                               const Cochain<OP, P>::Tuple&, const OpTerm&);                       \
  template std::vector<std::pair<Cochain<OP, P>::Tuple, OpTerm>> truncated_basis<OP, P>(                           \
      const LieAlgebra&, const Rational&, const Rational&, Parity, const BoundsSpec&, const std::optional<Rational>&);

SYMDEF_INSTANTIATE(DiffOp, 0)
SYMDEF_INSTANTIATE(DiffOp, 1)
SYMDEF_INSTANTIATE(DiffOp, 2)
SYMDEF_INSTANTIATE(DiffOp, 3)
SYMDEF_INSTANTIATE(SuperDiffOp, 0)
SYMDEF_INSTANTIATE(SuperDiffOp, 1)
SYMDEF_INSTANTIATE(SuperDiffOp, 2)
SYMDEF_INSTANTIATE(SuperDiffOp, 3)

#define SYMDEF_INSTANTIATE_SOLVE(OP, P)                                                                   \
  template CoboundaryResult<OP, P> coboundary_solve(const Cochain<OP, P>&, const std::optional<BoundsSpec>&, \
                                                    SolveMode, const SignConvention&);                     \
  template IndependenceResult classes_independent(const std::vector<Cochain<OP, P>>&, const BoundsSpec&,    \
                                                  const SignConvention&);                                  \
  template std::optional<ClassDecomposition<OP, P>> decompose_on_classes(                                  \
      const Cochain<OP, P>&, const std::vector<Cochain<OP, P>>&, const BoundsSpec&, const SignConvention&);

SYMDEF_INSTANTIATE_SOLVE(DiffOp, 1)
SYMDEF_INSTANTIATE_SOLVE(DiffOp, 2)
SYMDEF_INSTANTIATE_SOLVE(SuperDiffOp, 1)
SYMDEF_INSTANTIATE_SOLVE(SuperDiffOp, 2)

}  // namespace symdef
