#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "symdef/cohomology/cochain.hpp"
#include "symdef/kernel/qmatrix.hpp"

namespace symdef {

/// Truncation of cochain spaces: operator order and x-degree of coefficients.
struct BoundsSpec {
  std::size_t max_operator_order = 1;
  std::size_t max_coefficient_degree = 1;

  /// Throws UsageError unless both are positive.
  void validate() const;
  BoundsSpec bumped(std::size_t by = 2) const {
    return {max_operator_order + by, max_coefficient_degree + by};
  }
  /// "order,degree"
  static BoundsSpec parse(const std::string& text);
  std::string to_string() const;
  friend bool operator==(const BoundsSpec&, const BoundsSpec&) = default;
};

/// Bounds for a target of order r between weights lambda -> mu:
/// order r + 2 + ceil(|2(mu - lambda)|) + 2, degree twice that plus 4.
BoundsSpec default_bounds(std::size_t order, const Rational& lambda, const Rational& mu);

template <class Op, std::size_t P>
BoundsSpec default_bounds(const Cochain<Op, P>& c) {
  std::size_t order = 0;
  for (const auto& [t, v] : c.images()) order = std::max(order, v.order().value_or(0));
  return default_bounds(order, c.space().source_weight(), c.space().target_weight());
}

/// Eigenvalue of the Euler element (x d/dx or X_x) on the monomial t of D_{lambda,mu}.
Rational term_weight(Flavor flavor, const OpTerm& t, const Rational& lambda, const Rational& mu);

template <NormalFormOperator Op>
Rational term_weight(const OpTerm& t, const Rational& lambda, const Rational& mu) {
  return term_weight(OperatorTraits<Op>::flavor, t, lambda, mu);
}

/// Splits a cochain into eigencomponents of the Euler element.
template <NormalFormOperator Op, std::size_t P>
std::map<Rational, Cochain<Op, P>> weight_components(const Cochain<Op, P>& c);

/// Coordinates keyed by (argument tuple, monomial).
using CochainKey = std::pair<std::vector<std::size_t>, OpTerm>;
template <NormalFormOperator Op, std::size_t P>
std::map<CochainKey, Rational> cochain_coordinates(const Cochain<Op, P>& c);

/// Cochain with a single monomial image.
template <NormalFormOperator Op, std::size_t P>
Cochain<Op, P> basis_cochain(const LieAlgebra& g, const Rational& lambda, const Rational& mu, Parity parity,
                             const typename Cochain<Op, P>::Tuple& t, const OpTerm& term);

/// Monomial basis of the truncated P-cochain space of the given parity, at one
/// Euler weight or (nullopt) all weights.
template <NormalFormOperator Op, std::size_t P>
std::vector<std::pair<typename Cochain<Op, P>::Tuple, OpTerm>> truncated_basis(
    const LieAlgebra& g, const Rational& lambda, const Rational& mu, Parity parity, const BoundsSpec& bounds,
    const std::optional<Rational>& weight);

enum class SolveMode { by_weight, monolithic };

template <NormalFormOperator Op, std::size_t P>
struct Witness {
  Cochain<Op, P - 1> b;
};
struct NoSolutionWithinBounds {
  BoundsSpec bounds;
};
template <NormalFormOperator Op, std::size_t P>
using CoboundaryResult = std::variant<Witness<Op, P>, NoSolutionWithinBounds>;

/// Finds b with d(b) = c inside the bounds. Throws UsageError if c is not a
/// cocycle; a returned witness is re-checked exactly.
template <NormalFormOperator Op, std::size_t P>
CoboundaryResult<Op, P> coboundary_solve(const Cochain<Op, P>& c, const std::optional<BoundsSpec>& bounds = {},
                                         SolveMode mode = SolveMode::by_weight,
                                         const SignConvention& sc = kCalibratedConvention);

/// Result of asking whether a family of cocycles stays independent modulo
/// coboundaries of bounded cochains.
struct IndependenceResult {
  bool independent = true;
  /// A nonzero relation sum alpha_i c_i = d(b) when dependent.
  std::vector<Rational> relation;
};

template <NormalFormOperator Op, std::size_t P>
IndependenceResult classes_independent(const std::vector<Cochain<Op, P>>& cocycles, const BoundsSpec& bounds,
                                       const SignConvention& sc = kCalibratedConvention);

template <NormalFormOperator Op, std::size_t P>
struct ClassDecomposition {
  std::vector<Rational> coefficients;  ///< one per basis cocycle
  Cochain<Op, P - 1> witness;
};

/// Writes target = sum_i alpha_i basis_i + d(witness) within the bounds, or
/// nullopt. Basis elements of the wrong parity get coefficient zero. The
/// result is re-checked exactly.
template <NormalFormOperator Op, std::size_t P>
std::optional<ClassDecomposition<Op, P>> decompose_on_classes(const Cochain<Op, P>& target,
                                                             const std::vector<Cochain<Op, P>>& basis,
                                                             const BoundsSpec& bounds,
                                                             const SignConvention& sc = kCalibratedConvention);

/// One row of a truncated cohomology table.
struct WeightRow {
  Parity parity = Parity::even;
  Rational weight;
  std::size_t cocycles = 0;    ///< dim ker d^p on the component
  std::size_t coboundaries = 0;  ///< rank of d^{p-1} into the component
  std::size_t dim = 0;
};

struct CohomologyDim {
  std::size_t dim = 0;
  bool stabilized = false;
  BoundsSpec bounds;
  std::vector<WeightRow> table;  ///< nonzero rows at the requested bounds
  /// Components strictly above these weights were not examined.
  Rational examined_up_to;
  Rational examined_up_to_bumped;
  std::size_t dim_bumped = 0;
};

/// dim H^degree(g; D_{lambda,mu}) on truncated spaces, summed over examined
/// Euler weights and, for osp(1|2), both parities.
CohomologyDim cohomology_dim(const Rational& lambda, const Rational& mu, int degree, AlgebraKind algebra,
                             const std::optional<BoundsSpec>& bounds = {},
                             const SignConvention& sc = kCalibratedConvention);

}  // namespace symdef
