#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "symdef/kernel/rational.hpp"

namespace symdef {

enum class Parity : std::uint8_t { even = 0, odd = 1 };

inline Parity operator+(Parity a, Parity b) {
  return static_cast<Parity>(static_cast<int>(a) ^ static_cast<int>(b));
}
inline int parity_bit(Parity p) { return static_cast<int>(p); }
inline Parity parity_of(int bit) { return (bit & 1) ? Parity::odd : Parity::even; }
/// (-1)^{p q}
inline int koszul(Parity p, Parity q) { return (p == Parity::odd && q == Parity::odd) ? -1 : 1; }
const char* to_string(Parity p);

/// Ordered list of parameter symbols, each even or odd. The declaration order
/// fixes the normal ordering of odd symbols inside monomials.
class Alphabet {
 public:
  struct Symbol {
    std::string name;
    Parity parity;
    friend bool operator==(const Symbol&, const Symbol&) = default;
  };

  Alphabet() = default;
  explicit Alphabet(std::vector<Symbol> symbols);

  std::size_t size() const { return symbols_.size(); }
  const Symbol& symbol(std::size_t i) const { return symbols_.at(i); }
  const std::vector<Symbol>& symbols() const { return symbols_; }
  std::optional<std::size_t> find(std::string_view name) const;
  std::size_t index_of(std::string_view name) const;  ///< throws UsageError if absent

  friend bool operator==(const Alphabet& a, const Alphabet& b) { return a.symbols_ == b.symbols_; }

 private:
  std::vector<Symbol> symbols_;
};

using AlphabetPtr = std::shared_ptr<const Alphabet>;

AlphabetPtr make_alphabet(std::vector<Alphabet::Symbol> symbols);

/// Normalized word in parameter symbols: factors sorted by symbol index,
/// odd symbols carry exponent 1.
class Monomial {
 public:
  using Factor = std::pair<std::uint32_t, std::uint32_t>;  // (symbol index, exponent)

  Monomial() = default;
  static Monomial symbol(std::uint32_t index) { Monomial m; m.factors_.push_back({index, 1}); return m; }
  /// Sorts and merges factors; does not check odd exponents.
  static Monomial from_factors(std::vector<Factor> factors);

  const std::vector<Factor>& factors() const { return factors_; }
  bool is_one() const { return factors_.empty(); }
  std::uint32_t degree() const;
  std::uint32_t exponent(std::uint32_t index) const;
  Parity parity(const Alphabet& alphabet) const;

  friend auto operator<=>(const Monomial&, const Monomial&) = default;
  friend bool operator==(const Monomial&, const Monomial&) = default;

 private:
  std::vector<Factor> factors_;
};

/// Product of two monomials with its Koszul sign; sign 0 when an odd symbol
/// would appear twice.
struct SignedMonomial {
  int sign = 1;
  Monomial monomial;
};
SignedMonomial multiply(const Monomial& a, const Monomial& b, const Alphabet& alphabet);
std::string to_string(const Monomial& m, const Alphabet& alphabet);

/// Element of the supercommutative polynomial algebra over the rationals in the
/// symbols of an alphabet. A null alphabet marks a pure constant, compatible
/// with every alphabet.
class ParamScalar {
 public:
  ParamScalar() = default;
  ParamScalar(const Rational& c);  // NOLINT(google-explicit-constructor)
  ParamScalar(long c) : ParamScalar(Rational(c)) {}  // NOLINT
  ParamScalar(int c) : ParamScalar(Rational(c)) {}  // NOLINT
  ParamScalar(AlphabetPtr alphabet, const Rational& c = Rational(0));

  static ParamScalar symbol(const AlphabetPtr& alphabet, std::string_view name);
  static ParamScalar monomial(const AlphabetPtr& alphabet, const Monomial& m, const Rational& c);
  /// Parses the canonical form produced by to_string().
  static ParamScalar parse(const AlphabetPtr& alphabet, std::string_view text);

  const AlphabetPtr& alphabet() const { return alphabet_; }
  const std::map<Monomial, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_term() const;
  Rational coefficient(const Monomial& m) const;
  std::uint32_t max_degree() const;
  /// Parity of a homogeneous element; nullopt when mixed (zero is even).
  std::optional<Parity> parity() const;

  std::string to_string() const;

  ParamScalar operator-() const;
  ParamScalar& operator+=(const ParamScalar& o);
  ParamScalar& operator-=(const ParamScalar& o);
  ParamScalar& operator*=(const ParamScalar& o);
  ParamScalar& operator*=(const Rational& c);

  friend ParamScalar operator+(ParamScalar a, const ParamScalar& b) { return a += b; }
  friend ParamScalar operator-(ParamScalar a, const ParamScalar& b) { return a -= b; }
  friend ParamScalar operator*(ParamScalar a, const ParamScalar& b) { return a *= b; }

  /// Equality of canonical forms; alphabets must agree.
  friend bool operator==(const ParamScalar& a, const ParamScalar& b);

 private:
  void add_term(const Monomial& m, const Rational& c);
  static AlphabetPtr common(const AlphabetPtr& a, const AlphabetPtr& b);

  AlphabetPtr alphabet_;
  std::map<Monomial, Rational> terms_;
};

ParamScalar param_mul(const ParamScalar& p, const ParamScalar& q);

/// Evaluation at a parameter point. Even symbols take Rational values; an odd
/// symbol may only be assigned zero. Unassigned symbols stay formal.
using ParamAssignment = std::map<std::string, Rational>;
ParamScalar param_substitute(const ParamScalar& p, const ParamAssignment& assignment);

/// Replaces symbols by elements of another algebra (polynomial substitution).
/// Symbols missing from the map are an error.
ParamScalar param_compose(const ParamScalar& p, const std::map<std::string, ParamScalar>& images,
                          const AlphabetPtr& target);

/// Splits p by its odd content: monomial in odd symbols -> polynomial in even
/// symbols. A condition on odd parameters vanishes iff every value does.
std::map<Monomial, ParamScalar> split_by_odd_part(const ParamScalar& p);

}  // namespace symdef
