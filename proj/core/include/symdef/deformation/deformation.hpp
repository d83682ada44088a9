#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "symdef/catalog/catalog.hpp"
#include "symdef/cohomology/solve.hpp"
#include "symdef/deformation/param_sum.hpp"

namespace symdef {

/// Infinitesimal deformation request. Parameters: a{j} on window component j,
/// b{k}, c{k} on the off-diagonal cocycles (odd in the super flavor).
struct DeformationSpec {
  Flavor flavor = Flavor::classical;
  Rational delta;
  std::size_t window = 8;
  ParamAssignment params;  ///< optional numeric values

  static DeformationSpec resonant(Flavor flavor, long m, std::optional<std::size_t> window = {});
  static DeformationSpec generic(Flavor flavor, const Rational& delta, std::optional<std::size_t> window = {});
  static std::size_t default_window(long m) { return static_cast<std::size_t>(std::max(8L, 2 * m + 2)); }

  /// m = 2 delta in the resonant case: integer >= 2 (classical) or >= 1 (super).
  std::optional<long> m() const;
  bool resonant() const { return m().has_value(); }
  /// Range of k for the off-diagonal parameters (empty when not resonant).
  std::pair<long, long> k_range() const;
  Rational component_weight(std::size_t j) const;
  /// Window component carrying the off-diagonal cocycle k, as (source, target).
  BlockIndex off_diagonal_block(long k) const;
  AlphabetPtr alphabet() const;
  /// Throws UsageError on invalid windows, indices or assignments.
  void validate() const;
};

template <NormalFormOperator Op>
using GradedSum = ParamSum<GradedOp<Op>>;

/// rho_0 + first_order + sum of higher_terms, each a 1-cochain with
/// parameter-valued window operators (parity: even in total).
template <NormalFormOperator Op>
struct DeformedAction {
  DeformationSpec spec;
  AlphabetPtr alphabet;
  Cochain1<GradedSum<Op>> rho0;
  Cochain1<GradedSum<Op>> first_order;
  std::vector<Cochain1<GradedSum<Op>>> higher_terms;

  GradedSum<Op> zero_value(Parity p = Parity::even) const;
  /// The full action on basis element i.
  GradedSum<Op> action(std::size_t i) const;
  /// Numeric substitution into every term (rho0 is parameter free).
  DeformedAction substituted(const ParamAssignment& assignment) const;
};

template <NormalFormOperator Op>
DeformedAction<Op> build_infinitesimal(const DeformationSpec& spec);

/// [L_X, L_Y] - L_{[X,Y]} on basis elements i, j.
template <NormalFormOperator Op>
GradedSum<Op> bracket_defect(const DeformedAction<Op>& d, std::size_t i, std::size_t j);

/// The defect as a parameter-valued 2-cochain.
template <NormalFormOperator Op>
Cochain2<GradedSum<Op>> defect_cochain(const DeformedAction<Op>& d);

struct HomomorphismVerdict {
  bool pass = true;
  std::size_t first = 0;
  std::size_t second = 0;
  std::string residual;  ///< rendering of the first nonzero residual
  std::vector<BlockIndex> residual_blocks;
};

template <NormalFormOperator Op>
HomomorphismVerdict verify_homomorphism(const DeformedAction<Op>& d);

/// Op-valued 2-cochain of one parameter monomial on one block of a defect.
template <NormalFormOperator Op>
Cochain2<Op> block_cochain(const Cochain2<GradedSum<Op>>& defect, const Monomial& m, const BlockIndex& block);
template <NormalFormOperator Op>
Cochain1<Op> block_cochain(const Cochain1<GradedSum<Op>>& c, const Monomial& m, const BlockIndex& block);

template <NormalFormOperator Op>
struct ObstructionBlock {
  BlockIndex block;
  long k = 0;
  std::optional<CatalogId> basis;  ///< 2-cocycle spanning H^2 on the block, if known
  ParamScalar cls;                 ///< class coefficient
  std::vector<std::pair<Monomial, Cochain1<Op>>> witness;
  bool decomposed = true;
  /// Published generator in engine labels, and comparison up to a nonzero scalar.
  std::optional<ParamScalar> printed;
  bool concordant = false;
  std::optional<Rational> scalar;  ///< engine = scalar * printed when concordant
};

template <NormalFormOperator Op>
struct ObstructionReport {
  std::vector<ObstructionBlock<Op>> blocks;
  std::vector<ParamScalar> generators;  ///< nonzero classes, one per block
  bool linear_part_vanishes = true;
  bool conclusive = true;
  BoundsSpec bounds;
};

/// Decomposes the quadratic defect block by block and monomial by monomial into
/// class * basis + d1(witness); requires empty higher terms.
template <NormalFormOperator Op>
ObstructionReport<Op> obstruction_classes(const DeformedAction<Op>& d, const std::optional<BoundsSpec>& bounds = {});

/// The published integrability generator for index k, in engine labels.
ParamScalar printed_condition(const DeformationSpec& spec, long k);

/// Whether a equals r * b for some nonzero rational r.
std::optional<Rational> proportional(const ParamScalar& a, const ParamScalar& b);

struct ConditionVerdict {
  long k = 0;
  ParamScalar generator;  ///< symbolic
  ParamScalar value;      ///< after substitution (odd parameters formal)
  bool satisfied = false;
};

/// Evaluates the printed conditions at spec.params. All even parameters that
/// occur in a condition must be assigned.
std::vector<ConditionVerdict> check_printed_conditions(const DeformationSpec& spec);
/// Same for arbitrary generators (e.g. engine-derived ones).
std::vector<ConditionVerdict> check_conditions(const DeformationSpec& spec, const std::vector<std::pair<long, ParamScalar>>& generators);

struct Example1Report {
  long m = 0;
  std::vector<Rational> alphas;
  std::map<long, Rational> printed_c;  ///< c_k / t from the printed formula
  std::map<long, Rational> solved_c;   ///< c_k / t solving the engine conditions
  HomomorphismVerdict printed_verdict;
  HomomorphismVerdict solved_verdict;
  bool coincide = false;
  std::vector<std::pair<long, ParamScalar>> engine_generators;
};

/// Audit of the published one-parameter family; classical flavor, one even parameter t.
Example1Report example1_family(long m, const std::vector<Rational>& alphas,
                               const std::optional<BoundsSpec>& bounds = {});

/// Conjugation U^{-1} L U with U = Id + sum T, truncated in parameter degree.
/// Each T entry must be parameter-homogeneous of positive degree and even total parity.
template <NormalFormOperator Op>
DeformedAction<Op> gauge_transform(const DeformedAction<Op>& d, const std::vector<GradedSum<Op>>& t,
                                   std::uint32_t truncation_order);

struct NotTrivializable {
  std::string reason;
};

template <NormalFormOperator Op>
using Trivialization = std::variant<std::pair<GradedSum<Op>, DeformedAction<Op>>, NotTrivializable>;

/// Removes the second-order term by a gauge T2 with d0(T2) = -rho2 when possible.
template <NormalFormOperator Op>
Trivialization<Op> trivialize_second_order(const DeformedAction<Op>& d, const std::optional<BoundsSpec>& bounds = {});

}  // namespace symdef
