#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "symdef/cohomology/algebra.hpp"

namespace symdef {

/// Zero of the value space of `proto` with the given parity.
inline DiffOp zero_like(const DiffOp& proto, Parity) { return DiffOp::zero(proto.source_weight(), proto.target_weight()); }
inline SuperDiffOp zero_like(const SuperDiffOp& proto, Parity p) {
  return SuperDiffOp::zero(proto.source_weight(), proto.target_weight(), p);
}
template <NormalFormOperator Op>
GradedOp<Op> zero_like(const GradedOp<Op>& proto, Parity p) {
  return GradedOp<Op>(proto.delta(), proto.window(), p);
}

inline bool same_space(const DiffOp& a, const DiffOp& b) {
  return a.source_weight() == b.source_weight() && a.target_weight() == b.target_weight();
}
inline bool same_space(const SuperDiffOp& a, const SuperDiffOp& b) {
  return a.source_weight() == b.source_weight() && a.target_weight() == b.target_weight();
}
template <NormalFormOperator Op>
bool same_space(const GradedOp<Op>& a, const GradedOp<Op>& b) {
  return a.delta() == b.delta() && a.window() == b.window();
}

/// The two sign toggles of the super Chevalley-Eilenberg differential.
/// Both on: (dc)(X_0..X_p) = sum_i (-1)^{i + |X_i|(|c| + sum_{l<i}|X_l|)} X_i.c(..^i..)
///        + sum_{i<j} (-1)^{i+j + |X_i| sum_{l<i}|X_l| + |X_j|(sum_{l<j}|X_l| - |X_i|)} c([X_i,X_j], ..^i..^j..)
struct SignConvention {
  bool action_koszul = true;
  bool bracket_koszul = true;

  std::string to_string() const {
    return std::string("action_koszul=") + (action_koszul ? "on" : "off") +
           ",bracket_koszul=" + (bracket_koszul ? "on" : "off");
  }
  friend bool operator==(const SignConvention&, const SignConvention&) = default;
};

/// Convention fixed by calibration against the catalog.
inline constexpr SignConvention kCalibratedConvention{};

/// Super-antisymmetric p-cochain on the algebra with values in V, stored on
/// canonical (non-decreasing) tuples; repeated indices only for odd elements.
template <class V, std::size_t P>
class Cochain {
 public:
  using Tuple = std::array<std::size_t, P>;

  Cochain(const LieAlgebra& g, const V& space, Parity parity)
      : g_(&g), proto_(zero_like(space, Parity::even)), parity_(parity) {}

  const LieAlgebra& algebra() const { return *g_; }
  Parity parity() const { return parity_; }
  const V& space() const { return proto_; }
  const std::map<Tuple, V>& images() const { return images_; }
  bool is_zero() const { return images_.empty(); }

  Parity image_parity(const Tuple& t) const {
    Parity p = parity_;
    for (auto i : t) p = p + g_->parity(i);
    return p;
  }
  V zero_image(const Tuple& t) const { return zero_like(proto_, image_parity(t)); }

  /// Sign and sorted tuple, or nullopt when an even element repeats.
  static std::optional<std::pair<int, Tuple>> canonicalize(const LieAlgebra& g, Tuple t) {
    int sign = 1;
    for (std::size_t a = 0; a < P; ++a)
      for (std::size_t b = 0; b + 1 < P - a; ++b)
        if (t[b] > t[b + 1]) {
          sign *= -koszul(g.parity(t[b]), g.parity(t[b + 1]));
          std::swap(t[b], t[b + 1]);
        }
    for (std::size_t b = 0; b + 1 < P; ++b)
      if (t[b] == t[b + 1] && g.parity(t[b]) == Parity::even) return std::nullopt;
    return std::make_pair(sign, t);
  }

  /// All canonical tuples in lexicographic order.
  static std::vector<Tuple> canonical_tuples(const LieAlgebra& g) {
    std::vector<Tuple> out;
    Tuple t{};
    auto rec = [&](auto&& self, std::size_t pos, std::size_t start) -> void {
      if (pos == P) {
        out.push_back(t);
        return;
      }
      for (std::size_t i = start; i < g.size(); ++i) {
        if (pos > 0 && i == t[pos - 1] && g.parity(i) == Parity::even) continue;
        t[pos] = i;
        self(self, pos + 1, i);
      }
    };
    rec(rec, 0, 0);
    return out;
  }

  /// Adds v into the image of t (any order; antisymmetry applied).
  void add(const Tuple& t, const V& v) {
    if (v.is_zero()) return;
    if (!same_space(v, proto_)) throw UsageError("cochain image in a different operator space");
    if (v.parity() != image_parity(t)) throw UsageError("cochain image has the wrong parity");
    auto canon = canonicalize(*g_, t);
    if (!canon) throw UsageError("nonzero image on a repeated even argument");
    V term = v;
    if (canon->first < 0) term = -term;
    auto [it, inserted] = images_.try_emplace(canon->second, term);
    if (!inserted) {
      it->second += term;
      if (it->second.is_zero()) images_.erase(it);
    }
  }
  void set(const Tuple& t, const V& v) {
    if (auto canon = canonicalize(*g_, t)) images_.erase(canon->second);
    add(t, v);
  }

  /// Image at an arbitrary tuple.
  V at(const Tuple& t) const {
    auto canon = canonicalize(*g_, t);
    if (!canon) return zero_image(t);
    auto it = images_.find(canon->second);
    if (it == images_.end()) return zero_image(t);
    return canon->first < 0 ? -it->second : it->second;
  }

  Cochain operator-() const {
    Cochain out = *this;
    for (auto& [t, v] : out.images_) v = -v;
    return out;
  }
  Cochain& operator+=(const Cochain& o) {
    check_compatible(o);
    for (const auto& [t, v] : o.images_) add(t, v);
    return *this;
  }
  Cochain& operator-=(const Cochain& o) { return *this += -o; }
  Cochain& operator*=(const Rational& q) {
    if (q.is_zero()) images_.clear();
    for (auto& [t, v] : images_) v *= q;
    return *this;
  }
  friend Cochain operator+(Cochain a, const Cochain& b) { return a += b; }
  friend Cochain operator-(Cochain a, const Cochain& b) { return a -= b; }
  friend Cochain operator*(const Rational& q, Cochain a) { return a *= q; }

  /// Equal images; the parity tag of zero cochains is ignored.
  friend bool operator==(const Cochain& a, const Cochain& b) {
    if (a.g_ != b.g_ || !same_space(a.proto_, b.proto_)) return false;
    if (a.images_.size() != b.images_.size()) return false;
    if (a.is_zero()) return true;
    return a.parity_ == b.parity_ && a.images_ == b.images_;
  }

  std::string to_string() const {
    std::string out;
    for (const auto& [t, v] : images_) {
      out += "(";
      for (std::size_t i = 0; i < P; ++i) out += (i ? "," : "") + g_->name(t[i]);
      out += ") -> " + v.to_string() + "\n";
    }
    return out.empty() ? "0\n" : out;
  }

  void check_compatible(const Cochain& o) const {
    if (g_ != o.g_ || !same_space(proto_, o.proto_)) throw UsageError("cochains on different spaces");
    if (!is_zero() && !o.is_zero() && parity_ != o.parity_) throw UsageError("adding cochains of different parity");
  }

  /// Re-tags the parity of a zero cochain; used by sums starting from zero.
  void retag(Parity p) {
    if (!is_zero() && p != parity_) throw UsageError("cannot change the parity of a nonzero cochain");
    parity_ = p;
  }

 private:
  const LieAlgebra* g_;
  V proto_;
  Parity parity_;
  std::map<Tuple, V> images_;
};

template <class V>
using Cochain0 = Cochain<V, 0>;
template <class V>
using Cochain1 = Cochain<V, 1>;
template <class V>
using Cochain2 = Cochain<V, 2>;
template <class V>
using Cochain3 = Cochain<V, 3>;

/// Cochain0 from a single value.
template <class V>
Cochain0<V> make_cochain0(const LieAlgebra& g, const V& value) {
  Cochain0<V> out(g, value, value.parity());
  out.add({}, value);
  return out;
}

/// Chevalley-Eilenberg differential.
template <class V, std::size_t P>
Cochain<V, P + 1> differential(const Cochain<V, P>& c, const SignConvention& sc = kCalibratedConvention) {
  const LieAlgebra& g = c.algebra();
  Cochain<V, P + 1> out(g, c.space(), c.parity());
  const int pc = parity_bit(c.parity());
  for (const auto& t : Cochain<V, P + 1>::canonical_tuples(g)) {
    V value = out.zero_image(t);
    std::array<int, P + 1> par{};
    for (std::size_t i = 0; i <= P; ++i) par[i] = parity_bit(g.parity(t[i]));
    std::array<int, P + 2> prefix{};
    for (std::size_t i = 0; i <= P; ++i) prefix[i + 1] = prefix[i] + par[i];

    for (std::size_t i = 0; i <= P; ++i) {
      typename Cochain<V, P>::Tuple rest{};
      for (std::size_t l = 0, r = 0; l <= P; ++l)
        if (l != i) rest[r++] = t[l];
      V inner = c.at(rest);
      if (inner.is_zero()) continue;
      int e = static_cast<int>(i);
      if (sc.action_koszul) e += par[i] * (pc + prefix[i]);
      V term = act(g, t[i], inner);
      value += (e % 2) ? -term : term;
    }
    for (std::size_t i = 0; i <= P; ++i)
      for (std::size_t j = i + 1; j <= P; ++j) {
        int e = static_cast<int>(i + j);
        if (sc.bracket_koszul) e += par[i] * prefix[i] + par[j] * (prefix[j] - par[i]);
        for (const auto& [k, coef] : g.bracket(t[i], t[j])) {
          typename Cochain<V, P>::Tuple args{};
          args[0] = k;
          for (std::size_t l = 0, r = 1; l <= P; ++l)
            if (l != i && l != j) args[r++] = t[l];
          V inner = c.at(args);
          if (inner.is_zero()) continue;
          inner *= coef;
          value += (e % 2) ? -inner : inner;
        }
      }
    out.add(t, value);
  }
  return out;
}

template <class V>
Cochain1<V> d0(const Cochain0<V>& b, const SignConvention& sc = kCalibratedConvention) {
  return differential(b, sc);
}
template <class V>
Cochain2<V> d1(const Cochain1<V>& c, const SignConvention& sc = kCalibratedConvention) {
  return differential(c, sc);
}
template <class V>
Cochain3<V> d2(const Cochain2<V>& w, const SignConvention& sc = kCalibratedConvention) {
  return differential(w, sc);
}

}  // namespace symdef
