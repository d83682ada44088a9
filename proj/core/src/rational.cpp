#include "symdef/kernel/rational.hpp"

#include <cctype>
#include <climits>

#include "symdef/kernel/errors.hpp"

namespace symdef {

namespace {

bool valid_integer_text(std::string_view text) {
  std::size_t i = 0;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
  if (i == text.size()) return false;
  for (; i < text.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) return false;
  return true;
}

mpz_class parse_integer(std::string_view text) {
  if (!valid_integer_text(text)) throw UsageError("malformed rational: '" + std::string(text) + "'");
  std::string s(text);
  if (s[0] == '+') s.erase(0, 1);
  return mpz_class(s, 10);
}

long checked_long(const mpz_class& z) {
  if (!z.fits_slong_p()) throw UsageError("integer out of machine range: " + z.get_str());
  return z.get_si();
}

}  // namespace

Rational::Rational(long num, long den) : Rational(mpz_class(num), mpz_class(den)) {}

Rational::Rational(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw UsageError("rational with zero denominator");
  value_ = mpq_class(num, den);
  value_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text), mpz_class(1));
  mpz_class num = parse_integer(text.substr(0, slash));
  std::string_view den_text = text.substr(slash + 1);
  if (!den_text.empty() && (den_text[0] == '-' || den_text[0] == '+'))
    throw UsageError("malformed rational: '" + std::string(text) + "'");
  mpz_class den = parse_integer(den_text);
  if (den == 0) throw UsageError("rational with zero denominator: '" + std::string(text) + "'");
  return Rational(num, den);
}

std::size_t Rational::bit_size() const {
  return mpz_sizeinbase(value_.get_num_mpz_t(), 2) + mpz_sizeinbase(value_.get_den_mpz_t(), 2);
}

long Rational::floor() const {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
  return checked_long(q);
}

long Rational::ceil() const {
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
  return checked_long(q);
}

long Rational::to_long() const {
  if (!is_integer()) throw UsageError("not an integer: " + to_string());
  return checked_long(value_.get_num());
}

std::string Rational::to_string() const {
  if (value_.get_den() == 1) return value_.get_num().get_str();
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw UsageError("division by zero");
  value_ /= o.value_;
  return *this;
}

Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

Rational binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return Rational(0);
  mpz_class out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return Rational(out, mpz_class(1));
}

Rational falling_factorial(long n, long k) {
  Rational out(1);
  for (long i = 0; i < k; ++i) out *= Rational(n - i);
  return out;
}

}  // namespace symdef
