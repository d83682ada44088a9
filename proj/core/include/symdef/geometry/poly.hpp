#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "symdef/kernel/param_scalar.hpp"
#include "symdef/kernel/rational.hpp"

namespace symdef {

/// Coefficient rings usable in polynomials: Rational and ParamScalar.
template <class R>
concept CoefficientRing = requires(R a, const R b, const Rational q) {
  { a += b } -> std::same_as<R&>;
  { a -= b } -> std::same_as<R&>;
  { a * b } -> std::convertible_to<R>;
  { a *= q } -> std::same_as<R&>;
  { b.is_zero() } -> std::convertible_to<bool>;
  { b.to_string() } -> std::convertible_to<std::string>;
  { -b } -> std::convertible_to<R>;
};

/// Polynomial in x with coefficients in R; trailing zeros are trimmed.
template <CoefficientRing R>
class BasicPoly {
 public:
  BasicPoly() = default;
  explicit BasicPoly(std::vector<R> coeffs) : coeffs_(std::move(coeffs)) { trim(); }
  BasicPoly(std::initializer_list<R> coeffs) : coeffs_(coeffs) { trim(); }

  static BasicPoly constant(const R& c) { return BasicPoly(std::vector<R>{c}); }
  /// c x^n
  static BasicPoly monomial(std::size_t n, const R& c) {
    std::vector<R> v(n + 1, R(0));
    v[n] = c;
    return BasicPoly(std::move(v));
  }
  static BasicPoly x_power(std::size_t n) { return monomial(n, R(1)); }

  bool is_zero() const { return coeffs_.empty(); }
  /// nullopt for the zero polynomial.
  std::optional<std::size_t> degree() const {
    if (coeffs_.empty()) return std::nullopt;
    return coeffs_.size() - 1;
  }
  std::size_t size() const { return coeffs_.size(); }
  const std::vector<R>& coeffs() const { return coeffs_; }
  R coefficient(std::size_t n) const { return n < coeffs_.size() ? coeffs_[n] : R(0); }
  const R& leading() const { return coeffs_.back(); }

  BasicPoly derivative(std::size_t order = 1) const {
    if (order >= coeffs_.size()) return {};
    std::vector<R> out(coeffs_.size() - order, R(0));
    for (std::size_t n = order; n < coeffs_.size(); ++n) {
      R c = coeffs_[n];
      c *= falling_factorial(static_cast<long>(n), static_cast<long>(order));
      out[n - order] = std::move(c);
    }
    return BasicPoly(std::move(out));
  }

  /// Multiplication by x^n.
  BasicPoly shifted(std::size_t n) const {
    if (is_zero()) return {};
    std::vector<R> out(n, R(0));
    out.insert(out.end(), coeffs_.begin(), coeffs_.end());
    return BasicPoly(std::move(out));
  }

  BasicPoly operator-() const {
    BasicPoly out = *this;
    for (auto& c : out.coeffs_) c = -c;
    return out;
  }
  BasicPoly& operator+=(const BasicPoly& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), R(0));
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    trim();
    return *this;
  }
  BasicPoly& operator-=(const BasicPoly& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), R(0));
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    trim();
    return *this;
  }
  BasicPoly& operator*=(const Rational& q) {
    if (q.is_zero()) {
      coeffs_.clear();
      return *this;
    }
    for (auto& c : coeffs_) c *= q;
    trim();
    return *this;
  }
  friend BasicPoly operator+(BasicPoly a, const BasicPoly& b) { return a += b; }
  friend BasicPoly operator-(BasicPoly a, const BasicPoly& b) { return a -= b; }
  friend BasicPoly operator*(BasicPoly a, const Rational& q) { return a *= q; }
  friend BasicPoly operator*(const Rational& q, BasicPoly a) { return a *= q; }
  friend BasicPoly operator*(const BasicPoly& a, const BasicPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<R> out(a.coeffs_.size() + b.coeffs_.size() - 1, R(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (a.coeffs_[i].is_zero()) continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
        if (b.coeffs_[j].is_zero()) continue;
        out[i + j] += a.coeffs_[i] * b.coeffs_[j];
      }
    }
    return BasicPoly(std::move(out));
  }
  BasicPoly& operator*=(const BasicPoly& o) { return *this = *this * o; }

  friend bool operator==(const BasicPoly& a, const BasicPoly& b) { return a.coeffs_ == b.coeffs_; }

  /// Human-readable form, e.g. "3*x^2 - x + 1/2".
  std::string to_string() const {
    if (coeffs_.empty()) return "0";
    std::string out;
    for (std::size_t k = coeffs_.size(); k-- > 0;) {
      if (coeffs_[k].is_zero()) continue;
      std::string c = coeffs_[k].to_string();
      bool compound = c.find(' ') != std::string::npos;
      bool negative = !compound && !c.empty() && c[0] == '-';
      if (negative) c.erase(0, 1);
      if (compound) c = "(" + c + ")";
      if (out.empty())
        out += negative ? "-" : "";
      else
        out += negative ? " - " : " + ";
      if (k == 0) {
        out += c;
      } else {
        if (c != "1") out += c + "*";
        out += k == 1 ? "x" : "x^" + std::to_string(k);
      }
    }
    return out;
  }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
  }

  std::vector<R> coeffs_;
};

using Poly = BasicPoly<Rational>;
using ParamPoly = BasicPoly<ParamScalar>;

}  // namespace symdef
