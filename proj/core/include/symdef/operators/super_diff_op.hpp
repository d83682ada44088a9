#pragma once

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "symdef/geometry/density.hpp"
#include "symdef/operators/op_term.hpp"

namespace symdef {

/// Differential operator sum_i q_i(x, theta) eta_bar^i between super density
/// modules. Stored exponents are free; eta_bar^2 = -d/dx only enters through
/// composition.
class SuperDiffOp {
 public:
  SuperDiffOp() = default;
  /// Throws UsageError if the content is not homogeneous of the declared parity.
  SuperDiffOp(Rational source_weight, Rational target_weight, std::vector<SuperPoly> coeffs, Parity parity);

  static SuperDiffOp zero(const Rational& lambda, const Rational& mu, Parity parity = Parity::even) {
    return {lambda, mu, {}, parity};
  }
  static SuperDiffOp identity(const Rational& lambda, const Rational& mu);
  /// Multiplication by a homogeneous superfunction.
  static SuperDiffOp multiplication(const Rational& lambda, const Rational& mu, const SuperPoly& q);
  /// eta_bar^n
  static SuperDiffOp eta_bar_power(const Rational& lambda, const Rational& mu, std::size_t n);
  /// c x^n theta^eps eta_bar^i
  static SuperDiffOp monomial(const Rational& lambda, const Rational& mu, std::size_t n, int eps, std::size_t i,
                              const Rational& c = Rational(1));
  /// d/dx and d/dtheta in eta_bar form.
  static SuperDiffOp dx(const Rational& lambda, const Rational& mu);
  static SuperDiffOp dtheta(const Rational& lambda, const Rational& mu);
  static SuperDiffOp from_coordinates(const Rational& lambda, const Rational& mu, const OpCoordinates& coords,
                                      Parity parity);

  const Rational& source_weight() const { return lambda_; }
  const Rational& target_weight() const { return mu_; }
  const std::vector<SuperPoly>& coeffs() const { return coeffs_; }
  SuperPoly coefficient(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : SuperPoly{}; }
  Parity parity() const { return parity_; }
  bool is_zero() const { return coeffs_.empty(); }
  /// Highest eta_bar power; nullopt for zero.
  std::optional<std::size_t> order() const;
  std::size_t max_coefficient_degree() const;

  OpCoordinates coordinates() const;
  SuperPoly apply(const SuperPoly& f) const;
  std::string to_string() const;

  /// Terms f(x) theta^eps d_theta^a d_x^b keyed by (eps, a, b).
  std::map<std::tuple<int, int, std::size_t>, Poly> dx_dtheta_form() const;
  std::string dx_dtheta_string() const;

  SuperDiffOp with_weights(const Rational& lambda, const Rational& mu) const {
    return {lambda, mu, coeffs_, parity_};
  }

  SuperDiffOp operator-() const;
  SuperDiffOp& operator+=(const SuperDiffOp& o);
  SuperDiffOp& operator-=(const SuperDiffOp& o);
  SuperDiffOp& operator*=(const Rational& q);
  friend SuperDiffOp operator+(SuperDiffOp a, const SuperDiffOp& b) { return a += b; }
  friend SuperDiffOp operator-(SuperDiffOp a, const SuperDiffOp& b) { return a -= b; }
  friend SuperDiffOp operator*(const Rational& q, SuperDiffOp a) { return a *= q; }

  /// Weights and normal-form coefficients agree; parity of zero operators is ignored.
  friend bool operator==(const SuperDiffOp& a, const SuperDiffOp& b);

 private:
  void check_same_weights(const SuperDiffOp& o) const;
  void merge_parity(const SuperDiffOp& o);
  void trim();

  Rational lambda_;
  Rational mu_;
  std::vector<SuperPoly> coeffs_;
  Parity parity_ = Parity::even;
};

/// Parity of q eta_bar^i summed over terms; nullopt if mixed, even if zero.
std::optional<Parity> content_parity(const std::vector<SuperPoly>& coeffs);

Density apply(const SuperDiffOp& a, const Density& d);

/// A o B in eta_bar normal form.
SuperDiffOp compose(const SuperDiffOp& a, const SuperDiffOp& b);

/// A o B - (-1)^{p(A)p(B)} B o A
SuperDiffOp supercommutator(const SuperDiffOp& a, const SuperDiffOp& b);

/// Lie derivative X_G + lambda G' on super densities of weight lambda, as an
/// operator of parity p(G).
SuperDiffOp super_lie_derivative_operator(const ContactField& x, const Rational& lambda);

/// L^mu_{X_F} o A - (-1)^{p(A)p(F)} A o L^lambda_{X_F}
SuperDiffOp super_lie_derivative_op(const ContactField& x, const SuperDiffOp& a);

}  // namespace symdef
