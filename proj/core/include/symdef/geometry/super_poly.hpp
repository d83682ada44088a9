#pragma once

#include <optional>
#include <string>

#include "symdef/geometry/poly.hpp"
#include "symdef/kernel/errors.hpp"

namespace symdef {

/// Polynomial superfunction f0(x) + theta f1(x) on R^{1|1}. Coefficients are
/// treated as even scalars; theta^2 = 0 is structural.
template <CoefficientRing R>
class BasicSuperPoly {
 public:
  using PolyT = BasicPoly<R>;

  BasicSuperPoly() = default;
  BasicSuperPoly(PolyT f0, PolyT f1) : f0_(std::move(f0)), f1_(std::move(f1)) {}
  BasicSuperPoly(PolyT f0) : f0_(std::move(f0)) {}  // NOLINT(google-explicit-constructor)

  static BasicSuperPoly even(PolyT f0) { return {std::move(f0), PolyT{}}; }
  /// theta * f1
  static BasicSuperPoly odd(PolyT f1) { return {PolyT{}, std::move(f1)}; }
  static BasicSuperPoly theta() { return odd(PolyT::constant(R(1))); }
  /// c x^n theta^eps
  static BasicSuperPoly monomial(std::size_t n, int eps, const R& c) {
    return eps ? odd(PolyT::monomial(n, c)) : even(PolyT::monomial(n, c));
  }

  const PolyT& f0() const { return f0_; }
  const PolyT& f1() const { return f1_; }

  bool is_zero() const { return f0_.is_zero() && f1_.is_zero(); }
  bool is_homogeneous() const { return f0_.is_zero() || f1_.is_zero(); }
  /// Parity of a homogeneous value (zero counts as even); nullopt otherwise.
  std::optional<Parity> parity() const {
    if (f1_.is_zero()) return Parity::even;
    if (f0_.is_zero()) return Parity::odd;
    return std::nullopt;
  }
  /// Parity for parity-sensitive formulas; rejects mixed values.
  Parity require_parity(const char* context) const {
    auto p = parity();
    if (!p) throw UsageError(std::string(context) + ": superfunction is not homogeneous");
    return *p;
  }
  BasicSuperPoly even_part() const { return even(f0_); }
  BasicSuperPoly odd_part() const { return odd(f1_); }

  BasicSuperPoly dx(std::size_t order = 1) const { return {f0_.derivative(order), f1_.derivative(order)}; }
  BasicSuperPoly dtheta() const { return even(f1_); }
  BasicSuperPoly times_theta() const { return odd(f0_); }

  BasicSuperPoly operator-() const { return {-f0_, -f1_}; }
  BasicSuperPoly& operator+=(const BasicSuperPoly& o) { f0_ += o.f0_; f1_ += o.f1_; return *this; }
  BasicSuperPoly& operator-=(const BasicSuperPoly& o) { f0_ -= o.f0_; f1_ -= o.f1_; return *this; }
  BasicSuperPoly& operator*=(const Rational& q) { f0_ *= q; f1_ *= q; return *this; }
  friend BasicSuperPoly operator+(BasicSuperPoly a, const BasicSuperPoly& b) { return a += b; }
  friend BasicSuperPoly operator-(BasicSuperPoly a, const BasicSuperPoly& b) { return a -= b; }
  friend BasicSuperPoly operator*(BasicSuperPoly a, const Rational& q) { return a *= q; }
  friend BasicSuperPoly operator*(const Rational& q, BasicSuperPoly a) { return a *= q; }
  friend BasicSuperPoly operator*(const BasicSuperPoly& a, const BasicSuperPoly& b) {
    return {a.f0_ * b.f0_, a.f1_ * b.f0_ + a.f0_ * b.f1_};
  }
  friend bool operator==(const BasicSuperPoly&, const BasicSuperPoly&) = default;

  std::string to_string() const {
    if (f1_.is_zero()) return f0_.to_string();
    std::string odd_text = "theta*(" + f1_.to_string() + ")";
    if (f0_.is_zero()) return odd_text;
    return f0_.to_string() + " + " + odd_text;
  }

 private:
  PolyT f0_;
  PolyT f1_;
};

using SuperPoly = BasicSuperPoly<Rational>;
using ParamSuperPoly = BasicSuperPoly<ParamScalar>;

/// eta_bar = d/dtheta - theta d/dx; flips parity of homogeneous inputs.
template <CoefficientRing R>
BasicSuperPoly<R> eta_bar(const BasicSuperPoly<R>& f) {
  return {f.f1(), -f.f0().derivative()};
}

/// eta_bar applied n times; eta_bar^2 = -d/dx.
template <CoefficientRing R>
BasicSuperPoly<R> eta_bar_power(BasicSuperPoly<R> f, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) f = eta_bar(f);
  return f;
}

/// eta = d/dtheta + theta d/dx; eta^2 = d/dx.
template <CoefficientRing R>
BasicSuperPoly<R> eta(const BasicSuperPoly<R>& f) {
  return {f.f1(), f.f0().derivative()};
}

template <CoefficientRing R>
BasicSuperPoly<R> eta_power(BasicSuperPoly<R> f, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) f = eta(f);
  return f;
}

}  // namespace symdef
