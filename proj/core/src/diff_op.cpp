#include "symdef/operators/diff_op.hpp"

#include <algorithm>

#include "symdef/kernel/errors.hpp"

namespace symdef {

DiffOp::DiffOp(Rational source_weight, Rational target_weight, std::vector<Poly> coeffs)
    : lambda_(std::move(source_weight)), mu_(std::move(target_weight)), coeffs_(std::move(coeffs)) {
  trim();
}

DiffOp DiffOp::identity(const Rational& lambda, const Rational& mu) {
  return {lambda, mu, {Poly::constant(Rational(1))}};
}

DiffOp DiffOp::multiplication(const Rational& lambda, const Rational& mu, const Poly& p) {
  return {lambda, mu, {p}};
}

DiffOp DiffOp::monomial(const Rational& lambda, const Rational& mu, std::size_t n, std::size_t i,
                        const Rational& c) {
  std::vector<Poly> coeffs(i + 1);
  coeffs[i] = Poly::monomial(n, c);
  return {lambda, mu, std::move(coeffs)};
}

DiffOp DiffOp::from_coordinates(const Rational& lambda, const Rational& mu, const OpCoordinates& coords) {
  std::vector<std::vector<Rational>> dense;
  for (const auto& [term, c] : coords) {
    if (term.theta != 0) throw UsageError("classical operator coordinate with a theta factor");
    if (term.power >= dense.size()) dense.resize(term.power + 1);
    auto& row = dense[term.power];
    if (term.xdeg >= row.size()) row.resize(term.xdeg + 1);
    row[term.xdeg] += c;
  }
  std::vector<Poly> coeffs;
  coeffs.reserve(dense.size());
  for (auto& row : dense) coeffs.emplace_back(std::move(row));
  return {lambda, mu, std::move(coeffs)};
}

std::optional<std::size_t> DiffOp::order() const {
  if (coeffs_.empty()) return std::nullopt;
  return coeffs_.size() - 1;
}

std::size_t DiffOp::max_coefficient_degree() const {
  std::size_t d = 0;
  for (const auto& p : coeffs_)
    if (auto deg = p.degree()) d = std::max(d, *deg);
  return d;
}

OpCoordinates DiffOp::coordinates() const {
  OpCoordinates out;
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    for (std::size_t n = 0; n < coeffs_[i].size(); ++n)
      if (!coeffs_[i].coeffs()[n].is_zero()) out.emplace(OpTerm{i, n, 0}, coeffs_[i].coeffs()[n]);
  return out;
}

Poly DiffOp::apply(const Poly& f) const {
  Poly out;
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    if (!coeffs_[i].is_zero()) out += coeffs_[i] * f.derivative(i);
  return out;
}

std::string DiffOp::to_string() const {
  std::string body;
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    if (coeffs_[i].is_zero()) continue;
    if (!body.empty()) body += " + ";
    body += "(" + coeffs_[i].to_string() + ")";
    if (i > 0) body += i == 1 ? "*d" : "*d^" + std::to_string(i);
  }
  if (body.empty()) body = "0";
  return body + " : F[" + lambda_.to_string() + "] -> F[" + mu_.to_string() + "]";
}

void DiffOp::check_same_weights(const DiffOp& o) const {
  if (lambda_ != o.lambda_ || mu_ != o.mu_)
    throw UsageError("operators act between different weights: " + to_string() + " vs " + o.to_string());
}

void DiffOp::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

DiffOp DiffOp::operator-() const {
  DiffOp out = *this;
  for (auto& p : out.coeffs_) p = -p;
  return out;
}

DiffOp& DiffOp::operator+=(const DiffOp& o) {
  check_same_weights(o);
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  trim();
  return *this;
}

DiffOp& DiffOp::operator-=(const DiffOp& o) {
  check_same_weights(o);
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  trim();
  return *this;
}

DiffOp& DiffOp::operator*=(const Rational& q) {
  for (auto& p : coeffs_) p *= q;
  trim();
  return *this;
}

Density apply(const DiffOp& a, const Density& d) {
  if (d.flavor() != Flavor::classical) throw UsageError("classical operator applied to a super density");
  if (d.weight() != a.source_weight())
    throw UsageError("density weight " + d.weight().to_string() + " does not match operator source weight " +
                     a.source_weight().to_string());
  return {a.target_weight(), a.apply(d.poly())};
}

DiffOp compose(const DiffOp& a, const DiffOp& b) {
  if (b.target_weight() != a.source_weight())
    throw UsageError("cannot compose: target weight " + b.target_weight().to_string() +
                     " differs from source weight " + a.source_weight().to_string());
  if (a.is_zero() || b.is_zero()) return DiffOp::zero(b.source_weight(), a.target_weight());
  // (p d^i) o (q d^j) = p sum_l C(i,l) q^(l) d^(i+j-l)
  std::vector<Poly> out(a.coeffs().size() + b.coeffs().size() - 1);
  for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
    const Poly& p = a.coeffs()[i];
    if (p.is_zero()) continue;
    for (std::size_t j = 0; j < b.coeffs().size(); ++j) {
      const Poly& q = b.coeffs()[j];
      if (q.is_zero()) continue;
      for (std::size_t l = 0; l <= i; ++l) {
        Poly dq = q.derivative(l);
        if (dq.is_zero()) break;
        out[i + j - l] += binomial(static_cast<long>(i), static_cast<long>(l)) * (p * dq);
      }
    }
  }
  return {b.source_weight(), a.target_weight(), std::move(out)};
}

DiffOp supercommutator(const DiffOp& a, const DiffOp& b) { return compose(a, b) - compose(b, a); }

DiffOp lie_derivative_operator(const VectorField& x, const Rational& lambda) {
  return {lambda, lambda, {lambda * x.g.derivative(), x.g}};
}

DiffOp lie_derivative_op(const VectorField& x, const DiffOp& a) {
  return compose(lie_derivative_operator(x, a.target_weight()), a) -
         compose(a, lie_derivative_operator(x, a.source_weight()));
}

Density principal_symbol(const DiffOp& a) {
  auto k = a.order();
  if (!k) throw UsageError("principal symbol of the zero operator");
  Rational weight = a.target_weight() - a.source_weight() - Rational(static_cast<long>(*k));
  return {weight, a.coeffs().back()};
}

}  // namespace symdef
