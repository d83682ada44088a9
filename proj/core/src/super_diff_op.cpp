#include "symdef/operators/super_diff_op.hpp"

#include <algorithm>

#include "symdef/kernel/errors.hpp"

namespace symdef {

namespace {

void add_at(std::vector<SuperPoly>& v, std::size_t i, const SuperPoly& q) {
  if (q.is_zero()) return;
  if (i >= v.size()) v.resize(i + 1);
  v[i] += q;
}

/// eta_bar o (sum_l s_l eta_bar^l)
std::vector<SuperPoly> left_eta_bar(const std::vector<SuperPoly>& op) {
  std::vector<SuperPoly> out;
  for (std::size_t l = 0; l < op.size(); ++l) {
    const SuperPoly& s = op[l];
    if (s.is_zero()) continue;
    SuperPoly even = s.even_part();
    SuperPoly odd = s.odd_part();
    // eta_bar o s = eta_bar(s) + (-1)^{p(s)} s eta_bar
    add_at(out, l, eta_bar(s));
    add_at(out, l + 1, even - odd);
  }
  return out;
}

}  // namespace

std::optional<Parity> content_parity(const std::vector<SuperPoly>& coeffs) {
  std::optional<Parity> out;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    const SuperPoly& q = coeffs[i];
    Parity shift = parity_of(static_cast<int>(i & 1U));
    if (!q.f0().is_zero()) {
      Parity p = shift;
      if (out && *out != p) return std::nullopt;
      out = p;
    }
    if (!q.f1().is_zero()) {
      Parity p = shift + Parity::odd;
      if (out && *out != p) return std::nullopt;
      out = p;
    }
  }
  return out ? out : std::optional<Parity>(Parity::even);
}

SuperDiffOp::SuperDiffOp(Rational source_weight, Rational target_weight, std::vector<SuperPoly> coeffs,
                         Parity parity)
    : lambda_(std::move(source_weight)), mu_(std::move(target_weight)), coeffs_(std::move(coeffs)), parity_(parity) {
  trim();
  if (!coeffs_.empty()) {
    auto p = content_parity(coeffs_);
    if (!p) throw UsageError("super operator is not homogeneous");
    if (*p != parity_) throw UsageError("super operator content does not match its declared parity");
  }
}

SuperDiffOp SuperDiffOp::identity(const Rational& lambda, const Rational& mu) {
  return {lambda, mu, {SuperPoly::even(Poly::constant(Rational(1)))}, Parity::even};
}

SuperDiffOp SuperDiffOp::multiplication(const Rational& lambda, const Rational& mu, const SuperPoly& q) {
  return {lambda, mu, {q}, q.require_parity("multiplication operator")};
}

SuperDiffOp SuperDiffOp::eta_bar_power(const Rational& lambda, const Rational& mu, std::size_t n) {
  std::vector<SuperPoly> coeffs(n + 1);
  coeffs[n] = SuperPoly::even(Poly::constant(Rational(1)));
  return {lambda, mu, std::move(coeffs), parity_of(static_cast<int>(n & 1U))};
}

SuperDiffOp SuperDiffOp::monomial(const Rational& lambda, const Rational& mu, std::size_t n, int eps, std::size_t i,
                                  const Rational& c) {
  std::vector<SuperPoly> coeffs(i + 1);
  coeffs[i] = SuperPoly::monomial(n, eps, c);
  return {lambda, mu, std::move(coeffs), parity_of(static_cast<int>((i + static_cast<std::size_t>(eps)) & 1U))};
}

SuperDiffOp SuperDiffOp::dx(const Rational& lambda, const Rational& mu) {
  return {lambda, mu, {SuperPoly{}, SuperPoly{}, SuperPoly::even(Poly::constant(Rational(-1)))}, Parity::even};
}

SuperDiffOp SuperDiffOp::dtheta(const Rational& lambda, const Rational& mu) {
  // d/dtheta = eta_bar + theta d/dx = eta_bar - theta eta_bar^2
  return {lambda, mu,
          {SuperPoly{}, SuperPoly::even(Poly::constant(Rational(1))), SuperPoly::odd(Poly::constant(Rational(-1)))},
          Parity::odd};
}

SuperDiffOp SuperDiffOp::from_coordinates(const Rational& lambda, const Rational& mu, const OpCoordinates& coords,
                                          Parity parity) {
  std::vector<SuperPoly> coeffs;
  for (const auto& [term, c] : coords) add_at(coeffs, term.power, SuperPoly::monomial(term.xdeg, term.theta, c));
  return {lambda, mu, std::move(coeffs), parity};
}

std::optional<std::size_t> SuperDiffOp::order() const {
  if (coeffs_.empty()) return std::nullopt;
  return coeffs_.size() - 1;
}

std::size_t SuperDiffOp::max_coefficient_degree() const {
  std::size_t d = 0;
  for (const auto& q : coeffs_) {
    if (auto deg = q.f0().degree()) d = std::max(d, *deg);
    if (auto deg = q.f1().degree()) d = std::max(d, *deg);
  }
  return d;
}

OpCoordinates SuperDiffOp::coordinates() const {
  OpCoordinates out;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const auto& f0 = coeffs_[i].f0().coeffs();
    const auto& f1 = coeffs_[i].f1().coeffs();
    for (std::size_t n = 0; n < f0.size(); ++n)
      if (!f0[n].is_zero()) out.emplace(OpTerm{i, n, 0}, f0[n]);
    for (std::size_t n = 0; n < f1.size(); ++n)
      if (!f1[n].is_zero()) out.emplace(OpTerm{i, n, 1}, f1[n]);
  }
  return out;
}

SuperPoly SuperDiffOp::apply(const SuperPoly& f) const {
  SuperPoly out;
  SuperPoly g = f;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (!coeffs_[i].is_zero()) out += coeffs_[i] * g;
    g = eta_bar(g);
  }
  return out;
}

std::string SuperDiffOp::to_string() const {
  std::string body;
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    if (coeffs_[i].is_zero()) continue;
    if (!body.empty()) body += " + ";
    body += "(" + coeffs_[i].to_string() + ")";
    if (i > 0) body += i == 1 ? "*eta" : "*eta^" + std::to_string(i);
  }
  if (body.empty()) body = "0";
  return body + " : F[" + lambda_.to_string() + "] -> F[" + mu_.to_string() + "] (" + symdef::to_string(parity_) + ")";
}

std::map<std::tuple<int, int, std::size_t>, Poly> SuperDiffOp::dx_dtheta_form() const {
  std::map<std::tuple<int, int, std::size_t>, Poly> out;
  auto add = [&out](int eps, int a, std::size_t b, const Poly& f) {
    if (f.is_zero()) return;
    auto& slot = out[{eps, a, b}];
    slot += f;
    if (slot.is_zero()) out.erase({eps, a, b});
  };
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const SuperPoly& q = coeffs_[i];
    if (q.is_zero()) continue;
    std::size_t j = i / 2;
    Rational sign = (j % 2 == 0) ? Rational(1) : Rational(-1);
    if (i % 2 == 0) {
      // q eta^{2j} = (-1)^j q d_x^j
      add(0, 0, j, sign * q.f0());
      add(1, 0, j, sign * q.f1());
    } else {
      // q eta^{2j+1} = (-1)^j (q d_theta d_x^j - theta q0 d_x^{j+1})
      add(0, 1, j, sign * q.f0());
      add(1, 1, j, sign * q.f1());
      add(1, 0, j + 1, -sign * q.f0());
    }
  }
  return out;
}

std::string SuperDiffOp::dx_dtheta_string() const {
  std::string out;
  for (const auto& [key, f] : dx_dtheta_form()) {
    const auto& [eps, a, b] = key;
    if (!out.empty()) out += " + ";
    out += "(" + f.to_string() + ")";
    if (eps) out += "*theta";
    if (a) out += "*d_theta";
    if (b == 1) out += "*d_x";
    if (b > 1) out += "*d_x^" + std::to_string(b);
  }
  return out.empty() ? "0" : out;
}

void SuperDiffOp::check_same_weights(const SuperDiffOp& o) const {
  if (lambda_ != o.lambda_ || mu_ != o.mu_)
    throw UsageError("super operators act between different weights: " + to_string() + " vs " + o.to_string());
}

void SuperDiffOp::merge_parity(const SuperDiffOp& o) {
  if (o.is_zero()) return;
  if (is_zero()) {
    parity_ = o.parity_;
    return;
  }
  if (parity_ != o.parity_) throw UsageError("adding super operators of different parity");
}

void SuperDiffOp::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

SuperDiffOp SuperDiffOp::operator-() const {
  SuperDiffOp out = *this;
  for (auto& q : out.coeffs_) q = -q;
  return out;
}

SuperDiffOp& SuperDiffOp::operator+=(const SuperDiffOp& o) {
  check_same_weights(o);
  merge_parity(o);
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  trim();
  return *this;
}

SuperDiffOp& SuperDiffOp::operator-=(const SuperDiffOp& o) {
  check_same_weights(o);
  merge_parity(o);
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  trim();
  return *this;
}

SuperDiffOp& SuperDiffOp::operator*=(const Rational& q) {
  for (auto& c : coeffs_) c *= q;
  trim();
  return *this;
}

bool operator==(const SuperDiffOp& a, const SuperDiffOp& b) {
  if (a.lambda_ != b.lambda_ || a.mu_ != b.mu_ || a.coeffs_ != b.coeffs_) return false;
  return a.is_zero() || a.parity_ == b.parity_;
}

Density apply(const SuperDiffOp& a, const Density& d) {
  if (d.flavor() != Flavor::super) throw UsageError("super operator applied to a classical density");
  if (d.weight() != a.source_weight())
    throw UsageError("density weight " + d.weight().to_string() + " does not match operator source weight " +
                     a.source_weight().to_string());
  return {a.target_weight(), a.apply(d.super_poly())};
}

SuperDiffOp compose(const SuperDiffOp& a, const SuperDiffOp& b) {
  if (b.target_weight() != a.source_weight())
    throw UsageError("cannot compose: target weight " + b.target_weight().to_string() +
                     " differs from source weight " + a.source_weight().to_string());
  Parity parity = a.parity() + b.parity();
  if (a.is_zero() || b.is_zero()) return SuperDiffOp::zero(b.source_weight(), a.target_weight(), parity);
  std::vector<SuperPoly> out;
  std::vector<SuperPoly> power = b.coeffs();  // eta_bar^i o B
  for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
    const SuperPoly& q = a.coeffs()[i];
    if (!q.is_zero())
      for (std::size_t l = 0; l < power.size(); ++l) add_at(out, l, q * power[l]);
    if (i + 1 < a.coeffs().size()) power = left_eta_bar(power);
  }
  return {b.source_weight(), a.target_weight(), std::move(out), parity};
}

SuperDiffOp supercommutator(const SuperDiffOp& a, const SuperDiffOp& b) {
  SuperDiffOp ab = compose(a, b);
  SuperDiffOp ba = compose(b, a);
  return koszul(a.parity(), b.parity()) < 0 ? ab + ba : ab - ba;
}

SuperDiffOp super_lie_derivative_operator(const ContactField& x, const Rational& lambda) {
  const SuperPoly& g = x.generator();
  Rational half_sign = Rational(x.parity() == Parity::odd ? 1 : -1, 2);
  // X_G = G d_x - 1/2 (-1)^{p(G)} eta_bar(G) eta_bar with d_x = -eta_bar^2
  return {lambda, lambda, {lambda * g.dx(), half_sign * eta_bar(g), -g}, x.parity()};
}

SuperDiffOp super_lie_derivative_op(const ContactField& x, const SuperDiffOp& a) {
  SuperDiffOp left = compose(super_lie_derivative_operator(x, a.target_weight()), a);
  SuperDiffOp right = compose(a, super_lie_derivative_operator(x, a.source_weight()));
  return koszul(a.parity(), x.parity()) < 0 ? left + right : left - right;
}

}  // namespace symdef
