#include "symdef/kernel/param_scalar.hpp"

#include <algorithm>
#include <cctype>

#include "symdef/kernel/errors.hpp"

namespace symdef {

const char* to_string(Parity p) { return p == Parity::odd ? "odd" : "even"; }

namespace {

bool valid_symbol_name(std::string_view name) {
  if (name.empty()) return false;
  if (!(std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_')) return false;
  return std::all_of(name.begin(), name.end(), [](char ch) {
    return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_';
  });
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  return s;
}

}  // namespace

// ---------------------------------------------------------------- Alphabet

Alphabet::Alphabet(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    if (!valid_symbol_name(symbols_[i].name))
      throw UsageError("invalid parameter symbol name '" + symbols_[i].name + "'");
    for (std::size_t j = 0; j < i; ++j)
      if (symbols_[j].name == symbols_[i].name)
        throw UsageError("duplicate parameter symbol '" + symbols_[i].name + "'");
  }
}

std::optional<std::size_t> Alphabet::find(std::string_view name) const {
  for (std::size_t i = 0; i < symbols_.size(); ++i)
    if (symbols_[i].name == name) return i;
  return std::nullopt;
}

std::size_t Alphabet::index_of(std::string_view name) const {
  auto i = find(name);
  if (!i) throw UsageError("unknown parameter symbol '" + std::string(name) + "'");
  return *i;
}

AlphabetPtr make_alphabet(std::vector<Alphabet::Symbol> symbols) {
  return std::make_shared<const Alphabet>(std::move(symbols));
}

// ---------------------------------------------------------------- Monomial

Monomial Monomial::from_factors(std::vector<Factor> factors) {
  std::sort(factors.begin(), factors.end());
  Monomial m;
  for (const auto& [index, exp] : factors) {
    if (exp == 0) continue;
    if (!m.factors_.empty() && m.factors_.back().first == index)
      m.factors_.back().second += exp;
    else
      m.factors_.push_back({index, exp});
  }
  return m;
}

std::uint32_t Monomial::degree() const {
  std::uint32_t d = 0;
  for (const auto& f : factors_) d += f.second;
  return d;
}

std::uint32_t Monomial::exponent(std::uint32_t index) const {
  for (const auto& f : factors_)
    if (f.first == index) return f.second;
  return 0;
}

Parity Monomial::parity(const Alphabet& alphabet) const {
  int bit = 0;
  for (const auto& f : factors_)
    if (alphabet.symbol(f.first).parity == Parity::odd) bit ^= static_cast<int>(f.second & 1U);
  return parity_of(bit);
}

SignedMonomial multiply(const Monomial& a, const Monomial& b, const Alphabet& alphabet) {
  // Sign: every odd symbol of b must pass the odd symbols of a with a larger index.
  std::vector<std::uint32_t> odd_a;
  for (const auto& f : a.factors())
    if (alphabet.symbol(f.first).parity == Parity::odd) odd_a.push_back(f.first);
  int sign = 1;
  for (const auto& f : b.factors()) {
    if (alphabet.symbol(f.first).parity != Parity::odd) continue;
    if (std::binary_search(odd_a.begin(), odd_a.end(), f.first)) return {0, Monomial{}};
    auto greater = odd_a.end() - std::upper_bound(odd_a.begin(), odd_a.end(), f.first);
    if (greater & 1) sign = -sign;
  }
  std::vector<Monomial::Factor> all(a.factors());
  all.insert(all.end(), b.factors().begin(), b.factors().end());
  return {sign, Monomial::from_factors(std::move(all))};
}

std::string to_string(const Monomial& m, const Alphabet& alphabet) {
  std::string out;
  for (const auto& [index, exp] : m.factors()) {
    if (!out.empty()) out += '*';
    out += alphabet.symbol(index).name;
    if (exp > 1) out += '^' + std::to_string(exp);
  }
  return out.empty() ? "1" : out;
}

// ------------------------------------------------------------- ParamScalar

ParamScalar::ParamScalar(const Rational& c) {
  if (!c.is_zero()) terms_.emplace(Monomial{}, c);
}

ParamScalar::ParamScalar(AlphabetPtr alphabet, const Rational& c) : alphabet_(std::move(alphabet)) {
  if (!c.is_zero()) terms_.emplace(Monomial{}, c);
}

ParamScalar ParamScalar::symbol(const AlphabetPtr& alphabet, std::string_view name) {
  if (!alphabet) throw UsageError("symbol lookup without an alphabet");
  return monomial(alphabet, Monomial::symbol(static_cast<std::uint32_t>(alphabet->index_of(name))),
                  Rational(1));
}

ParamScalar ParamScalar::monomial(const AlphabetPtr& alphabet, const Monomial& m, const Rational& c) {
  ParamScalar out(alphabet);
  if (!m.is_one() && !alphabet) throw UsageError("non-constant monomial without an alphabet");
  for (const auto& [index, exp] : m.factors()) {
    if (index >= alphabet->size()) throw UsageError("monomial symbol index out of range");
    if (exp > 1 && alphabet->symbol(index).parity == Parity::odd) return out;
  }
  out.add_term(m, c);
  return out;
}

ParamScalar ParamScalar::parse(const AlphabetPtr& alphabet, std::string_view text) {
  text = trim(text);
  if (text.empty()) throw UsageError("empty parameter expression");
  ParamScalar out(alphabet);
  std::size_t pos = 0;
  bool first = true;
  while (pos < text.size()) {
    int sign = 1;
    if (first) {
      if (text[pos] == '-') { sign = -1; ++pos; }
    } else {
      auto rest = trim(text.substr(pos));
      pos = text.size() - rest.size();
      if (rest.empty() || (rest[0] != '+' && rest[0] != '-'))
        throw UsageError("malformed parameter expression: '" + std::string(text) + "'");
      sign = rest[0] == '-' ? -1 : 1;
      ++pos;
    }
    first = false;
    std::size_t end = pos;
    // A term ends at the next top-level " + " or " - ".
    while (end < text.size() && !(text[end] == ' ' && end + 1 < text.size() &&
                                  (text[end + 1] == '+' || text[end + 1] == '-')))
      ++end;
    std::string_view term = trim(text.substr(pos, end - pos));
    pos = end;
    if (term.empty()) throw UsageError("malformed parameter expression: '" + std::string(text) + "'");

    Rational coeff(sign);
    std::vector<Monomial::Factor> factors;
    std::size_t start = 0;
    bool leading = true;
    while (start <= term.size()) {
      auto star = term.find('*', start);
      std::string_view piece = term.substr(start, star == std::string_view::npos ? term.npos : star - start);
      if (leading && !piece.empty() && std::isdigit(static_cast<unsigned char>(piece[0]))) {
        coeff *= Rational::parse(piece);
      } else {
        std::string_view name = piece;
        std::uint32_t exp = 1;
        auto caret = piece.find('^');
        if (caret != std::string_view::npos) {
          name = piece.substr(0, caret);
          exp = static_cast<std::uint32_t>(Rational::parse(piece.substr(caret + 1)).to_long());
        }
        if (!alphabet) throw UsageError("symbol in expression without an alphabet");
        factors.push_back({static_cast<std::uint32_t>(alphabet->index_of(name)), exp});
      }
      leading = false;
      if (star == std::string_view::npos) break;
      start = star + 1;
    }
    // Factors were printed in normal order, so from_factors introduces no sign.
    out += monomial(alphabet, Monomial::from_factors(std::move(factors)), coeff);
  }
  return out;
}

bool ParamScalar::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

Rational ParamScalar::constant_term() const { return coefficient(Monomial{}); }

Rational ParamScalar::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

std::uint32_t ParamScalar::max_degree() const {
  std::uint32_t d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
  return d;
}

std::optional<Parity> ParamScalar::parity() const {
  if (terms_.empty()) return Parity::even;
  std::optional<Parity> out;
  for (const auto& [m, c] : terms_) {
    Parity p = alphabet_ ? m.parity(*alphabet_) : Parity::even;
    if (out && *out != p) return std::nullopt;
    out = p;
  }
  return out;
}

std::string ParamScalar::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    bool negative = c.sign() < 0;
    Rational mag = abs(c);
    if (first)
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    first = false;
    if (m.is_one()) {
      out += mag.to_string();
    } else {
      if (mag != Rational(1)) out += mag.to_string() + "*";
      out += symdef::to_string(m, *alphabet_);
    }
  }
  return out;
}

void ParamScalar::add_term(const Monomial& m, const Rational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

AlphabetPtr ParamScalar::common(const AlphabetPtr& a, const AlphabetPtr& b) {
  if (!a) return b;
  if (!b || a == b) return a;
  if (!(*a == *b)) throw UsageError("parameter alphabets do not match");
  return a;
}

ParamScalar ParamScalar::operator-() const {
  ParamScalar out = *this;
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

ParamScalar& ParamScalar::operator+=(const ParamScalar& o) {
  alphabet_ = common(alphabet_, o.alphabet_);
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

ParamScalar& ParamScalar::operator-=(const ParamScalar& o) {
  alphabet_ = common(alphabet_, o.alphabet_);
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

ParamScalar& ParamScalar::operator*=(const Rational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

ParamScalar& ParamScalar::operator*=(const ParamScalar& o) {
  AlphabetPtr alpha = common(alphabet_, o.alphabet_);
  ParamScalar out(alpha);
  for (const auto& [ma, ca] : terms_) {
    for (const auto& [mb, cb] : o.terms_) {
      if (ma.is_one() || mb.is_one()) {
        out.add_term(ma.is_one() ? mb : ma, ca * cb);
        continue;
      }
      SignedMonomial prod = multiply(ma, mb, *alpha);
      if (prod.sign == 0) continue;
      out.add_term(prod.monomial, prod.sign > 0 ? ca * cb : -(ca * cb));
    }
  }
  *this = std::move(out);
  return *this;
}

bool operator==(const ParamScalar& a, const ParamScalar& b) {
  if (a.alphabet_ && b.alphabet_ && a.alphabet_ != b.alphabet_ && !(*a.alphabet_ == *b.alphabet_))
    throw UsageError("comparing parameter scalars over different alphabets");
  return a.terms_ == b.terms_;
}

ParamScalar param_mul(const ParamScalar& p, const ParamScalar& q) { return p * q; }

ParamScalar param_substitute(const ParamScalar& p, const ParamAssignment& assignment) {
  const AlphabetPtr& alpha = p.alphabet();
  if (!alpha) return p;
  for (const auto& [name, value] : assignment) {
    auto index = alpha->find(name);
    if (!index) continue;
    if (alpha->symbol(*index).parity == Parity::odd && !value.is_zero())
      throw UsageError("odd parameter '" + name + "' cannot take the nonzero value " + value.to_string());
  }
  ParamScalar out(alpha);
  for (const auto& [m, c] : p.terms()) {
    Rational coeff = c;
    std::vector<Monomial::Factor> kept;
    for (const auto& [index, exp] : m.factors()) {
      auto it = assignment.find(alpha->symbol(index).name);
      if (it == assignment.end()) {
        kept.push_back({index, exp});
        continue;
      }
      Rational power(1);
      for (std::uint32_t e = 0; e < exp; ++e) power *= it->second;
      coeff *= power;
    }
    // Dropping symbols keeps the relative order of the remaining odd ones.
    out += ParamScalar::monomial(alpha, Monomial::from_factors(std::move(kept)), coeff);
  }
  return out;
}

ParamScalar param_compose(const ParamScalar& p, const std::map<std::string, ParamScalar>& images,
                          const AlphabetPtr& target) {
  ParamScalar out(target);
  const AlphabetPtr& alpha = p.alphabet();
  for (const auto& [m, c] : p.terms()) {
    ParamScalar term(target, c);
    for (const auto& [index, exp] : m.factors()) {
      const std::string& name = alpha->symbol(index).name;
      auto it = images.find(name);
      if (it == images.end()) throw UsageError("no substitution given for parameter '" + name + "'");
      for (std::uint32_t e = 0; e < exp; ++e) term *= it->second;
    }
    out += term;
  }
  return out;
}

std::map<Monomial, ParamScalar> split_by_odd_part(const ParamScalar& p) {
  std::map<Monomial, ParamScalar> out;
  const AlphabetPtr& alpha = p.alphabet();
  for (const auto& [m, c] : p.terms()) {
    std::vector<Monomial::Factor> odd, even;
    for (const auto& f : m.factors()) {
      if (alpha && alpha->symbol(f.first).parity == Parity::odd)
        odd.push_back(f);
      else
        even.push_back(f);
    }
    Monomial key = Monomial::from_factors(std::move(odd));
    auto [it, inserted] = out.try_emplace(key, ParamScalar(alpha));
    it->second += ParamScalar::monomial(alpha, Monomial::from_factors(std::move(even)), c);
  }
  for (auto it = out.begin(); it != out.end();) it = it->second.is_zero() ? out.erase(it) : std::next(it);
  return out;
}

}  // namespace symdef
