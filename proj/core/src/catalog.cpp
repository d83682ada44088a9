#include "symdef/catalog/catalog.hpp"

#include <regex>

namespace symdef {

const char* to_string(Family f) {
  switch (f) {
    case Family::A: return "A";
    case Family::B: return "B";
    case Family::C: return "C";
    case Family::Phi: return "Phi";
    case Family::Yprime: return "Yprime";
    case Family::Y: return "Y";
    case Family::Ytilde: return "Ytilde";
    case Family::Omega: return "Omega";
  }
  return "?";
}

namespace {

Family parse_family(const std::string& s) {
  for (Family f : {Family::A, Family::B, Family::C, Family::Phi, Family::Yprime, Family::Y, Family::Ytilde,
                   Family::Omega})
    if (s == to_string(f)) return f;
  throw UsageError("unknown cocycle family '" + s + "'");
}

long parse_long(const std::string& s, const std::string& key) {
  Rational q = Rational::parse(s);
  if (!q.is_integer()) throw UsageError("index " + key + " must be an integer");
  return q.to_long();
}

Rational half(long n) { return Rational(n, 2); }

// Multiplication operator by a superfunction of known parity.
SuperDiffOp times(const Rational& lambda, const Rational& mu, const SuperPoly& q, Parity p) {
  return SuperDiffOp(lambda, mu, {q}, p);
}

// q * eta_bar^n; n may be "negative" only with q = 0.
SuperDiffOp coeff_eta(const Rational& lambda, const Rational& mu, const SuperPoly& q, long n, Parity p) {
  if (q.is_zero()) return SuperDiffOp::zero(lambda, mu, p);
  if (n < 0) throw InvariantViolation("negative eta_bar power with nonzero coefficient");
  std::vector<SuperPoly> coeffs(static_cast<std::size_t>(n) + 1);
  coeffs.back() = q;
  return SuperDiffOp(lambda, mu, std::move(coeffs), p);
}

int sign_of(Parity p) { return p == Parity::odd ? -1 : 1; }

}  // namespace

CatalogId CatalogId::parse(const std::string& text) {
  static const std::regex shape(R"(^([A-Za-z]+):(.*)$)");
  std::smatch match;
  if (!std::regex_match(text, match, shape)) throw UsageError("catalog id must look like Family:key=value,...");
  CatalogId id;
  id.family = parse_family(match[1]);
  std::string rest = match[2];
  bool have_lambda = false, have_m = false, have_k = false;
  static const std::regex kv(R"(^\s*([A-Za-z]+)\s*=\s*([-+0-9/]+)\s*$)");
  std::size_t start = 0;
  while (start <= rest.size()) {
    std::size_t comma = rest.find(',', start);
    std::string item = rest.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    std::smatch m;
    if (!std::regex_match(item, m, kv)) throw UsageError("malformed catalog parameter '" + item + "'");
    std::string key = m[1];
    if (key == "lambda") {
      id.lambda = Rational::parse(m[2].str());
      have_lambda = true;
    } else if (key == "m") {
      id.m = parse_long(m[2].str(), key);
      have_m = true;
    } else if (key == "k") {
      id.k = parse_long(m[2].str(), key);
      have_k = true;
    } else {
      throw UsageError("unknown catalog parameter '" + key + "'");
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  switch (id.family) {
    case Family::A:
    case Family::Yprime:
      if (!have_lambda || have_m || have_k) throw UsageError(std::string(symdef::to_string(id.family)) + " takes lambda only");
      break;
    case Family::B:
    case Family::C:
      if (!have_m || !have_k || have_lambda) throw UsageError("B and C take m and k");
      break;
    default:
      if (!have_k || have_m || have_lambda) throw UsageError(std::string(symdef::to_string(id.family)) + " takes k only");
  }
  id.validate();
  return id;
}

void CatalogId::validate() const {
  switch (family) {
    case Family::A:
    case Family::Yprime:
      return;
    case Family::B:
    case Family::C:
      if (m < 2) throw UsageError("m must be at least 2");
      if (k < (m + 1) / 2 || k > m - 1)
        throw UsageError("k must satisfy floor((m+1)/2) <= k <= m-1");
      return;
    default:
      if (k < 1) throw UsageError("k must be at least 1");
  }
}

std::string CatalogId::to_string() const {
  std::string f = symdef::to_string(family);
  switch (family) {
    case Family::A:
    case Family::Yprime:
      return f + ":lambda=" + lambda.to_string();
    case Family::B:
    case Family::C:
      return f + ":m=" + std::to_string(m) + ",k=" + std::to_string(k);
    default:
      return f + ":k=" + std::to_string(k);
  }
}

Cochain1<DiffOp> cocycle_A(const Rational& lambda) {
  const auto& g = LieAlgebra::sl2();
  Cochain1<DiffOp> c(g, DiffOp::zero(lambda, lambda), Parity::even);
  for (std::size_t i = 0; i < g.size(); ++i)
    c.add({i}, DiffOp::multiplication(lambda, lambda, g.vector_field(i).g.derivative()));
  return c;
}

namespace {

Cochain1<DiffOp> bc_cocycle(long m, long k, bool is_b) {
  CatalogId{is_b ? Family::B : Family::C, {}, m, k}.validate();
  const Rational lambda = half(m - 2 * k), mu = half(2 + 2 * k - m);
  const auto& g = LieAlgebra::sl2();
  Cochain1<DiffOp> c(g, DiffOp::zero(lambda, mu), Parity::even);
  const std::size_t order = static_cast<std::size_t>(is_b ? 2 * k - m + 1 : 2 * k - m);
  for (std::size_t i = 0; i < g.size(); ++i) {
    Poly coef = g.vector_field(i).g.derivative(is_b ? 1 : 2);
    std::vector<Poly> coeffs(order + 1);
    coeffs[order] = coef;
    c.add({i}, DiffOp(lambda, mu, std::move(coeffs)));
  }
  return c;
}

}  // namespace

Cochain1<DiffOp> cocycle_B(long m, long k) { return bc_cocycle(m, k, true); }
Cochain1<DiffOp> cocycle_C(long m, long k) { return bc_cocycle(m, k, false); }

Cochain2<DiffOp> cocycle_Phi(long k) {
  CatalogId{Family::Phi, {}, 0, k}.validate();
  const Rational lambda = half(1 - k), mu = half(1 + k);
  const auto& g = LieAlgebra::sl2();
  Cochain2<DiffOp> c(g, DiffOp::zero(lambda, mu), Parity::even);
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = i + 1; j < g.size(); ++j) {
      const Poly& f = g.vector_field(i).g;
      const Poly& h = g.vector_field(j).g;
      Poly coef = f.derivative() * h.derivative(2) - f.derivative(2) * h.derivative();
      std::vector<Poly> coeffs(static_cast<std::size_t>(k));
      coeffs.back() = coef;
      c.add({i, j}, DiffOp(lambda, mu, std::move(coeffs)));
    }
  return c;
}

Cochain1<SuperDiffOp> cocycle_Yprime(const Rational& lambda) {
  const auto& g = LieAlgebra::osp12();
  Cochain1<SuperDiffOp> c(g, SuperDiffOp::zero(lambda, lambda), Parity::even);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto& f = g.contact_field(i);
    c.add({i}, times(lambda, lambda, f.generator().dx(), f.parity()));
  }
  return c;
}

Cochain1<SuperDiffOp> cocycle_Y(long k) {
  CatalogId{Family::Y, {}, 0, k}.validate();
  const Rational lambda = half(1 - k), mu = half(k);
  const auto& g = LieAlgebra::osp12();
  Cochain1<SuperDiffOp> c(g, SuperDiffOp::zero(lambda, mu), Parity::odd);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto& f = g.contact_field(i);
    SuperPoly q = Rational(sign_of(f.parity())) * eta_bar_power(f.generator(), 2);
    c.add({i}, coeff_eta(lambda, mu, q, 2 * k - 1, f.parity() + Parity::odd));
  }
  return c;
}

Cochain1<SuperDiffOp> cocycle_Ytilde(long k) {
  CatalogId{Family::Ytilde, {}, 0, k}.validate();
  const Rational lambda = half(1 - k), mu = half(k);
  const auto& g = LieAlgebra::osp12();
  Cochain1<SuperDiffOp> c(g, SuperDiffOp::zero(lambda, mu), Parity::odd);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto& f = g.contact_field(i);
    const Parity p = f.parity() + Parity::odd;
    const Rational s(sign_of(f.parity()));
    // Unbarred eta here: eta^3(G) = (-1)^{|G|} eta_bar^3(G), and only this reading closes.
    SuperDiffOp image = coeff_eta(lambda, mu, s * eta_power(f.generator(), 3), 2 * k - 2, p);
    if (k > 1) image += coeff_eta(lambda, mu, s * Rational(k - 1) * eta_power(f.generator(), 4), 2 * k - 3, p);
    c.add({i}, image);
  }
  return c;
}

Cochain2<SuperDiffOp> cocycle_Omega(long k) {
  CatalogId{Family::Omega, {}, 0, k}.validate();
  const Rational lambda = half(1 - k), mu = half(k);
  const auto& g = LieAlgebra::osp12();
  Cochain2<SuperDiffOp> c(g, SuperDiffOp::zero(lambda, mu), Parity::odd);
  for (const auto& t : Cochain2<SuperDiffOp>::canonical_tuples(g)) {
    const auto& xf = g.contact_field(t[0]);
    const auto& xg = g.contact_field(t[1]);
    const SuperPoly& f = xf.generator();
    const SuperPoly& h = xg.generator();
    const Parity p = xf.parity() + xg.parity() + Parity::odd;
    SuperPoly second = eta_bar(f.dx()) * h.dx() -
                       Rational(koszul(xf.parity(), xg.parity())) * (f.dx() * eta_bar(h.dx()));
    SuperDiffOp image = coeff_eta(lambda, mu, second, 2 * k - 2, p);
    if (k > 1) {
      SuperPoly first = Rational(sign_of(xf.parity() + xg.parity()) * (k - 1)) *
                        (f.dx() * h.dx(2) - f.dx(2) * h.dx());
      image += coeff_eta(lambda, mu, first, 2 * k - 3, p);
    }
    c.add(t, image);
  }
  return c;
}

AnyCochain build(const CatalogId& id) {
  id.validate();
  switch (id.family) {
    case Family::A: return cocycle_A(id.lambda);
    case Family::B: return cocycle_B(id.m, id.k);
    case Family::C: return cocycle_C(id.m, id.k);
    case Family::Phi: return cocycle_Phi(id.k);
    case Family::Yprime: return cocycle_Yprime(id.lambda);
    case Family::Y: return cocycle_Y(id.k);
    case Family::Ytilde: return cocycle_Ytilde(id.k);
    case Family::Omega: return cocycle_Omega(id.k);
  }
  throw InvariantViolation("unhandled family");
}

namespace {

// (F'G'' - F''G') d_x^n acting on superfunctions, as an eta_bar operator.
SuperDiffOp phi_operator(const Rational& w, const Poly& f, const Poly& h, long n) {
  Poly coef = f.derivative() * h.derivative(2) - f.derivative(2) * h.derivative();
  SuperDiffOp dxn = SuperDiffOp::identity(w, w);
  for (long i = 0; i < n; ++i) dxn = compose(SuperDiffOp::dx(w, w), dxn);
  return compose(SuperDiffOp::multiplication(w, w, SuperPoly::even(coef)), dxn);
}

}  // namespace

Lemma23Result lemma23_check(long k) {
  if (k < 2) throw UsageError("lemma23_check requires k >= 2");
  const auto& g = LieAlgebra::osp12();
  const Cochain2<SuperDiffOp> omega = cocycle_Omega(k);
  const Rational lambda = half(1 - k), mu = half(k);
  const Rational w(0);
  Lemma23Result result;
  result.k = k;
  for (std::size_t i : g.even_indices())
    for (std::size_t j : g.even_indices()) {
      SuperDiffOp lhs = omega.at({i, j});
      if (k % 2) lhs = -lhs;
      const Poly f = g.contact_field(i).generator().f0();
      const Poly h = g.contact_field(j).generator().f0();
      SuperDiffOp rhs = Rational(k - 1) * compose(phi_operator(w, f, h, k - 2), SuperDiffOp::dtheta(w, w)) -
                        Rational(k) * compose(SuperDiffOp::multiplication(w, w, SuperPoly::theta()),
                                              phi_operator(w, f, h, k - 1));
      rhs = rhs.with_weights(lambda, mu);
      SuperDiffOp residual = lhs - rhs;
      if (!residual.is_zero()) result.pass = false;
      result.pairs.push_back({i, j, lhs, rhs, residual});
    }
  return result;
}

}  // namespace symdef
