#pragma once

#include <string>
#include <utility>
#include <vector>

#include "symdef/geometry/fields.hpp"
#include "symdef/operators/graded_op.hpp"

namespace symdef {

enum class AlgebraKind { sl2, osp12 };
const char* to_string(AlgebraKind k);

/// sl(2) realized by {d/dx, x d/dx, x^2 d/dx}, or osp(1|2) realized by
/// {X_1, X_theta, X_x, X_{x theta}, X_{x^2}}. Structure constants are computed
/// from the geometric brackets at construction.
class LieAlgebra {
 public:
  using LinearCombination = std::vector<std::pair<std::size_t, Rational>>;

  static const LieAlgebra& sl2();
  static const LieAlgebra& osp12();
  static const LieAlgebra& of(AlgebraKind kind) { return kind == AlgebraKind::sl2 ? sl2() : osp12(); }

  AlgebraKind kind() const { return kind_; }
  std::size_t size() const { return names_.size(); }
  Parity parity(std::size_t i) const { return parities_.at(i); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  /// Eigenvalue of ad(Euler element) on the basis element: -1, 0, 1 for sl(2);
  /// -1, -1/2, 0, 1/2, 1 for osp(1|2).
  const Rational& weight(std::size_t i) const { return weights_.at(i); }
  std::size_t euler_index() const { return kind_ == AlgebraKind::sl2 ? 1 : 2; }
  /// Indices of the even part, which is sl(2) in both cases.
  std::vector<std::size_t> even_indices() const;

  /// [X_i, X_j] in the basis (super bracket for odd pairs).
  const LinearCombination& bracket(std::size_t i, std::size_t j) const { return brackets_.at(i * size() + j); }

  const VectorField& vector_field(std::size_t i) const;    ///< sl2 only
  const ContactField& contact_field(std::size_t i) const;  ///< osp12 only

 private:
  explicit LieAlgebra(AlgebraKind kind);

  AlgebraKind kind_;
  std::vector<std::string> names_;
  std::vector<Parity> parities_;
  std::vector<Rational> weights_;
  std::vector<LinearCombination> brackets_;
  std::vector<VectorField> vfields_;
  std::vector<ContactField> cfields_;
};

template <NormalFormOperator Op>
const LieAlgebra& algebra_for() {
  if constexpr (std::same_as<Op, DiffOp>)
    return LieAlgebra::sl2();
  else
    return LieAlgebra::osp12();
}

/// Action of basis element i on an operator by Lie derivative.
inline DiffOp act(const LieAlgebra& g, std::size_t i, const DiffOp& a) {
  return lie_derivative_op(g.vector_field(i), a);
}
inline SuperDiffOp act(const LieAlgebra& g, std::size_t i, const SuperDiffOp& a) {
  return super_lie_derivative_op(g.contact_field(i), a);
}
template <NormalFormOperator Op>
GradedOp<Op> act(const LieAlgebra& g, std::size_t i, const GradedOp<Op>& a) {
  if constexpr (std::same_as<Op, DiffOp>)
    return graded_action<Op>(g.vector_field(i), a);
  else
    return graded_action<Op>(g.contact_field(i), a);
}

/// Parity of basis element i as seen by the action (osp(1|2) odd elements are odd).
inline Parity field_parity(const LieAlgebra& g, std::size_t i) { return g.parity(i); }

}  // namespace symdef
