#pragma once

#include <map>
#include <string>
#include <type_traits>
#include <utility>

#include "symdef/kernel/errors.hpp"
#include "symdef/operators/diff_op.hpp"
#include "symdef/operators/super_diff_op.hpp"

namespace symdef {

template <class Op>
concept NormalFormOperator = std::same_as<Op, DiffOp> || std::same_as<Op, SuperDiffOp>;

template <NormalFormOperator Op>
struct OperatorTraits;

template <>
struct OperatorTraits<DiffOp> {
  static constexpr Flavor flavor = Flavor::classical;
  using Field = VectorField;
  /// Weight of the j-th summand of S_delta.
  static Rational component_weight(const Rational& delta, std::size_t j) {
    return delta - Rational(static_cast<long>(j));
  }
  static DiffOp zero(const Rational& lambda, const Rational& mu, Parity) { return DiffOp::zero(lambda, mu); }
  static DiffOp identity(const Rational& lambda) { return DiffOp::identity(lambda, lambda); }
  static DiffOp lie_operator(const VectorField& x, const Rational& lambda) {
    return lie_derivative_operator(x, lambda);
  }
  static DiffOp act(const VectorField& x, const DiffOp& a) { return lie_derivative_op(x, a); }
};

template <>
struct OperatorTraits<SuperDiffOp> {
  static constexpr Flavor flavor = Flavor::super;
  using Field = ContactField;
  static Rational component_weight(const Rational& delta, std::size_t j) {
    return delta - Rational(static_cast<long>(j), 2);
  }
  static SuperDiffOp zero(const Rational& lambda, const Rational& mu, Parity p) {
    return SuperDiffOp::zero(lambda, mu, p);
  }
  static SuperDiffOp identity(const Rational& lambda) { return SuperDiffOp::identity(lambda, lambda); }
  static SuperDiffOp lie_operator(const ContactField& x, const Rational& lambda) {
    return super_lie_derivative_operator(x, lambda);
  }
  static SuperDiffOp act(const ContactField& x, const SuperDiffOp& a) { return super_lie_derivative_op(x, a); }
};

/// Block (source index j, target index i).
using BlockIndex = std::pair<std::size_t, std::size_t>;

/// Operator on the window sum_{j <= K} F_{w(j)} of S_delta, stored block-wise;
/// block (j, i) maps component j to component i.
template <NormalFormOperator Op>
class GradedOp {
 public:
  using Traits = OperatorTraits<Op>;

  GradedOp() = default;
  GradedOp(Rational delta, std::size_t window, Parity parity = Parity::even)
      : delta_(std::move(delta)), window_(window), parity_(parity) {}

  const Rational& delta() const { return delta_; }
  std::size_t window() const { return window_; }
  Parity parity() const { return parity_; }
  Rational weight(std::size_t j) const { return Traits::component_weight(delta_, j); }
  const std::map<BlockIndex, Op>& blocks() const { return blocks_; }
  bool is_zero() const { return blocks_.empty(); }

  Op block(std::size_t source, std::size_t target) const {
    auto it = blocks_.find({source, target});
    if (it != blocks_.end()) return it->second;
    return Traits::zero(weight(source), weight(target), parity_);
  }

  /// Adds A into block (source, target); weights and parity must match.
  void add_block(std::size_t source, std::size_t target, const Op& a) {
    if (source > window_ || target > window_) throw UsageError("block index outside the window");
    if (a.source_weight() != weight(source) || a.target_weight() != weight(target))
      throw UsageError("block weights do not match window indices");
    if (a.is_zero()) return;
    if (a.parity() != parity_) throw UsageError("block parity differs from graded operator parity");
    auto [it, inserted] = blocks_.try_emplace({source, target}, a);
    if (!inserted) {
      it->second += a;
      if (it->second.is_zero()) blocks_.erase(it);
    }
  }

  static GradedOp identity(const Rational& delta, std::size_t window) {
    GradedOp out(delta, window);
    for (std::size_t j = 0; j <= window; ++j) out.add_block(j, j, Traits::identity(out.weight(j)));
    return out;
  }

  /// Block-diagonal Lie derivative of the field on the window.
  static GradedOp lie_derivative(const typename Traits::Field& x, const Rational& delta, std::size_t window,
                                 Parity field_parity) {
    GradedOp out(delta, window, field_parity);
    for (std::size_t j = 0; j <= window; ++j) out.add_block(j, j, Traits::lie_operator(x, out.weight(j)));
    return out;
  }

  GradedOp operator-() const {
    GradedOp out = *this;
    for (auto& [k, op] : out.blocks_) op = -op;
    return out;
  }
  GradedOp& operator+=(const GradedOp& o) {
    check_compatible(o);
    if (is_zero()) parity_ = o.parity_;
    for (const auto& [k, op] : o.blocks_) add_block(k.first, k.second, op);
    return *this;
  }
  GradedOp& operator-=(const GradedOp& o) { return *this += -o; }
  GradedOp& operator*=(const Rational& q) {
    if (q.is_zero()) {
      blocks_.clear();
      return *this;
    }
    for (auto& [k, op] : blocks_) op *= q;
    return *this;
  }
  friend GradedOp operator+(GradedOp a, const GradedOp& b) { return a += b; }
  friend GradedOp operator-(GradedOp a, const GradedOp& b) { return a -= b; }
  friend GradedOp operator*(const Rational& q, GradedOp a) { return a *= q; }

  friend bool operator==(const GradedOp& a, const GradedOp& b) {
    return a.delta_ == b.delta_ && a.window_ == b.window_ && a.blocks_ == b.blocks_;
  }

  std::string to_string() const {
    std::string out;
    for (const auto& [k, op] : blocks_)
      out += "[" + std::to_string(k.first) + "->" + std::to_string(k.second) + "] " + op.to_string() + "\n";
    return out.empty() ? "0\n" : out;
  }

  void check_compatible(const GradedOp& o) const {
    if (delta_ != o.delta_ || window_ != o.window_) throw UsageError("graded operators on different windows");
  }

 private:
  Rational delta_;
  std::size_t window_ = 0;
  Parity parity_ = Parity::even;
  std::map<BlockIndex, Op> blocks_;
};

/// Block matrix product A o B restricted to the window.
template <NormalFormOperator Op>
GradedOp<Op> compose(const GradedOp<Op>& a, const GradedOp<Op>& b) {
  a.check_compatible(b);
  GradedOp<Op> out(a.delta(), a.window(), a.parity() + b.parity());
  for (const auto& [kb, opb] : b.blocks())
    for (const auto& [ka, opa] : a.blocks())
      if (ka.first == kb.second) out.add_block(kb.first, ka.second, compose(opa, opb));
  return out;
}

template <NormalFormOperator Op>
GradedOp<Op> supercommutator(const GradedOp<Op>& a, const GradedOp<Op>& b) {
  GradedOp<Op> ab = compose(a, b);
  GradedOp<Op> ba = compose(b, a);
  return koszul(a.parity(), b.parity()) < 0 ? ab + ba : ab - ba;
}

/// Block-wise action of a field on a graded operator, each block with its own weights.
template <NormalFormOperator Op>
GradedOp<Op> graded_action(const typename OperatorTraits<Op>::Field& x, const GradedOp<Op>& g) {
  GradedOp<Op> out(g.delta(), g.window());
  bool first = true;
  for (const auto& [k, op] : g.blocks()) {
    Op image = OperatorTraits<Op>::act(x, op);
    if (first && !image.is_zero()) {
      out = GradedOp<Op>(g.delta(), g.window(), image.parity());
      first = false;
    }
    out.add_block(k.first, k.second, image);
  }
  return out;
}

}  // namespace symdef
