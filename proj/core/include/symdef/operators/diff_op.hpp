#pragma once

#include <optional>
#include <string>
#include <vector>

#include "symdef/geometry/density.hpp"
#include "symdef/operators/op_term.hpp"

namespace symdef {

/// Differential operator sum_i p_i(x) d^i/dx^i from F_lambda to F_mu.
class DiffOp {
 public:
  DiffOp() = default;
  DiffOp(Rational source_weight, Rational target_weight, std::vector<Poly> coeffs = {});

  static DiffOp zero(const Rational& lambda, const Rational& mu) { return {lambda, mu}; }
  static DiffOp identity(const Rational& lambda, const Rational& mu);
  /// Multiplication by p.
  static DiffOp multiplication(const Rational& lambda, const Rational& mu, const Poly& p);
  /// c x^n d^i
  static DiffOp monomial(const Rational& lambda, const Rational& mu, std::size_t n, std::size_t i,
                         const Rational& c = Rational(1));
  static DiffOp from_coordinates(const Rational& lambda, const Rational& mu, const OpCoordinates& coords);

  const Rational& source_weight() const { return lambda_; }
  const Rational& target_weight() const { return mu_; }
  const std::vector<Poly>& coeffs() const { return coeffs_; }
  Poly coefficient(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Poly{}; }
  bool is_zero() const { return coeffs_.empty(); }
  /// nullopt for the zero operator.
  std::optional<std::size_t> order() const;
  std::size_t max_coefficient_degree() const;
  Parity parity() const { return Parity::even; }

  OpCoordinates coordinates() const;
  Poly apply(const Poly& f) const;
  std::string to_string() const;

  /// Same operator between other weights.
  DiffOp with_weights(const Rational& lambda, const Rational& mu) const { return {lambda, mu, coeffs_}; }

  DiffOp operator-() const;
  DiffOp& operator+=(const DiffOp& o);
  DiffOp& operator-=(const DiffOp& o);
  DiffOp& operator*=(const Rational& q);
  friend DiffOp operator+(DiffOp a, const DiffOp& b) { return a += b; }
  friend DiffOp operator-(DiffOp a, const DiffOp& b) { return a -= b; }
  friend DiffOp operator*(const Rational& q, DiffOp a) { return a *= q; }

  /// Equal weights and equal normal-form coefficients.
  friend bool operator==(const DiffOp&, const DiffOp&) = default;

 private:
  void check_same_weights(const DiffOp& o) const;
  void trim();

  Rational lambda_;
  Rational mu_;
  std::vector<Poly> coeffs_;
};

/// A applied to f dx^lambda, landing in F_mu.
Density apply(const DiffOp& a, const Density& d);

/// A o B; requires B.target = A.source.
DiffOp compose(const DiffOp& a, const DiffOp& b);

/// A o B - B o A (even operators); requires composable both ways.
DiffOp supercommutator(const DiffOp& a, const DiffOp& b);

/// L^lambda_X = g d/dx + lambda g' as an operator F_lambda -> F_lambda.
DiffOp lie_derivative_operator(const VectorField& x, const Rational& lambda);

/// L_X^mu o A - A o L_X^lambda
DiffOp lie_derivative_op(const VectorField& x, const DiffOp& a);

/// Top coefficient as a density of weight mu - lambda - k.
Density principal_symbol(const DiffOp& a);

}  // namespace symdef
