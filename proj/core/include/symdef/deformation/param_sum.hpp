#pragma once

#include <map>
#include <string>
#include <utility>

#include "symdef/cohomology/cochain.hpp"
#include "symdef/kernel/param_scalar.hpp"

namespace symdef {

/// Finite sum of m (x) V over parameter monomials m, parameters written on the
/// left. Products follow (m1 (x) A)(m2 (x) B) = (-1)^{p(A)p(m2)} m1 m2 (x) AB.
template <class V>
class ParamSum {
 public:
  ParamSum() = default;
  /// Zero sum with the value space of `space` and total parity tag.
  ParamSum(AlphabetPtr alphabet, const V& space, Parity parity = Parity::even)
      : alphabet_(std::move(alphabet)), proto_(zero_like(space, Parity::even)), parity_(parity) {
    if (!alphabet_) throw UsageError("ParamSum needs an alphabet");
  }

  static ParamSum constant(const AlphabetPtr& alphabet, const V& v) {
    ParamSum out(alphabet, v, v.parity());
    out.add(Monomial{}, v);
    return out;
  }

  const AlphabetPtr& alphabet() const { return alphabet_; }
  const V& space() const { return proto_; }
  const std::map<Monomial, V>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Total parity p(m) + p(V) of every term.
  Parity parity() const { return parity_; }
  V coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? zero_like(proto_, parity_ + m.parity(*alphabet_)) : it->second;
  }
  std::uint32_t max_degree() const {
    std::uint32_t d = 0;
    for (const auto& [m, v] : terms_) d = std::max(d, m.degree());
    return d;
  }

  void add(const Monomial& m, const V& v) {
    if (v.is_zero()) return;
    if (!same_space(v, proto_)) throw UsageError("ParamSum term in a different space");
    const Parity total = m.parity(*alphabet_) + v.parity();
    if (terms_.empty())
      parity_ = total;
    else if (total != parity_)
      throw UsageError("ParamSum terms of mixed total parity");
    auto [it, inserted] = terms_.try_emplace(m, v);
    if (!inserted) {
      it->second += v;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  /// Terms of parameter degree exactly d.
  ParamSum degree_part(std::uint32_t d) const {
    ParamSum out(alphabet_, proto_, parity_);
    for (const auto& [m, v] : terms_)
      if (m.degree() == d) out.add(m, v);
    return out;
  }
  /// Terms of parameter degree at most d.
  ParamSum truncated(std::uint32_t d) const {
    ParamSum out(alphabet_, proto_, parity_);
    for (const auto& [m, v] : terms_)
      if (m.degree() <= d) out.add(m, v);
    return out;
  }

  /// Left multiplication by a parameter polynomial.
  friend ParamSum operator*(const ParamScalar& s, const ParamSum& p) {
    ParamSum out(p.alphabet_, p.proto_, p.parity_);
    for (const auto& [ms, c] : s.terms())
      for (const auto& [m, v] : p.terms_) {
        SignedMonomial prod = multiply(ms, m, *p.alphabet_);
        if (prod.sign == 0) continue;
        out.add(prod.monomial, Rational(prod.sign) * c * v);
      }
    return out;
  }

  ParamSum operator-() const {
    ParamSum out = *this;
    for (auto& [m, v] : out.terms_) v = -v;
    return out;
  }
  ParamSum& operator+=(const ParamSum& o) {
    check_compatible(o);
    for (const auto& [m, v] : o.terms_) add(m, v);
    if (terms_.empty()) parity_ = o.parity_;
    return *this;
  }
  ParamSum& operator-=(const ParamSum& o) { return *this += -o; }
  ParamSum& operator*=(const Rational& q) {
    if (q.is_zero()) terms_.clear();
    for (auto& [m, v] : terms_) v *= q;
    return *this;
  }
  friend ParamSum operator+(ParamSum a, const ParamSum& b) { return a += b; }
  friend ParamSum operator-(ParamSum a, const ParamSum& b) { return a -= b; }
  friend ParamSum operator*(const Rational& q, ParamSum a) { return a *= q; }

  friend bool operator==(const ParamSum& a, const ParamSum& b) {
    return *a.alphabet_ == *b.alphabet_ && same_space(a.proto_, b.proto_) && a.terms_ == b.terms_;
  }

  std::string to_string() const {
    std::string out;
    for (const auto& [m, v] : terms_) {
      std::string name = m.is_one() ? "1" : symdef::to_string(m, *alphabet_);
      out += "<" + name + ">\n" + v.to_string();
      if (out.back() != '\n') out += "\n";
    }
    return out.empty() ? "0\n" : out;
  }

  void check_compatible(const ParamSum& o) const {
    if (!(*alphabet_ == *o.alphabet_) || !same_space(proto_, o.proto_))
      throw UsageError("ParamSums over different alphabets or spaces");
  }

 private:
  AlphabetPtr alphabet_;
  V proto_;
  Parity parity_ = Parity::even;
  std::map<Monomial, V> terms_;
};

template <class V>
ParamSum<V> zero_like(const ParamSum<V>& proto, Parity p) {
  return ParamSum<V>(proto.alphabet(), proto.space(), p);
}
template <class V>
bool same_space(const ParamSum<V>& a, const ParamSum<V>& b) {
  return *a.alphabet() == *b.alphabet() && same_space(a.space(), b.space());
}

/// X . (m (x) A) = (-1)^{p(X)p(m)} m (x) X.A
template <class V>
ParamSum<V> act(const LieAlgebra& g, std::size_t i, const ParamSum<V>& p) {
  ParamSum<V> out(p.alphabet(), p.space(), p.parity() + g.parity(i));
  for (const auto& [m, v] : p.terms()) {
    V image = act(g, i, v);
    if (koszul(g.parity(i), m.parity(*p.alphabet())) < 0) image = -image;
    out.add(m, image);
  }
  return out;
}

template <class V>
ParamSum<V> compose(const ParamSum<V>& a, const ParamSum<V>& b) {
  a.check_compatible(b);
  const Alphabet& alpha = *a.alphabet();
  ParamSum<V> out(a.alphabet(), a.space(), a.parity() + b.parity());
  for (const auto& [m1, va] : a.terms())
    for (const auto& [m2, vb] : b.terms()) {
      SignedMonomial prod = multiply(m1, m2, alpha);
      if (prod.sign == 0) continue;
      int sign = prod.sign * koszul(va.parity(), m2.parity(alpha));
      V ab = compose(va, vb);
      if (sign < 0) ab = -ab;
      out.add(prod.monomial, ab);
    }
  return out;
}

/// PQ - (-1)^{|P||Q|} QP with total parities.
template <class V>
ParamSum<V> supercommutator(const ParamSum<V>& a, const ParamSum<V>& b) {
  ParamSum<V> ab = compose(a, b);
  ParamSum<V> ba = compose(b, a);
  return koszul(a.parity(), b.parity()) < 0 ? ab + ba : ab - ba;
}

/// Evaluates parameters per the assignment; unassigned symbols stay formal.
template <class V>
ParamSum<V> substitute(const ParamSum<V>& p, const ParamAssignment& assignment) {
  ParamSum<V> out(p.alphabet(), p.space(), p.parity());
  for (const auto& [m, v] : p.terms()) {
    ParamScalar s = param_substitute(ParamScalar::monomial(p.alphabet(), m, Rational(1)), assignment);
    for (const auto& [m2, c] : s.terms()) out.add(m2, c * v);
  }
  return out;
}

/// Rewrites parameters as polynomials over another alphabet.
template <class V>
ParamSum<V> reparametrize(const ParamSum<V>& p, const std::map<std::string, ParamScalar>& images,
                          const AlphabetPtr& target) {
  ParamSum<V> out(target, p.space(), p.parity());
  for (const auto& [m, v] : p.terms()) {
    ParamScalar s = param_compose(ParamScalar::monomial(p.alphabet(), m, Rational(1)), images, target);
    for (const auto& [m2, c] : s.terms()) out.add(m2, c * v);
  }
  return out;
}

}  // namespace symdef
