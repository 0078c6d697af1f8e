#include "g2lap/scalar.hpp"

#include <stdexcept>

#include "g2lap/errors.hpp"

namespace g2lap {

Rational frac(long num, long den) {
  if (den == 0) throw std::domain_error("zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty number");
  if (s.find('/') != std::string::npos) {
    Rational q;
    if (q.set_str(s, 10) != 0) throw std::invalid_argument("not a rational: " + s);
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
    q.canonicalize();
    return q;
  }
  // decimal with optional exponent, converted exactly
  std::size_t epos = s.find_first_of("eE");
  long exponent = 0;
  std::string mant = s.substr(0, epos);
  if (epos != std::string::npos) {
    std::size_t used = 0;
    exponent = std::stol(s.substr(epos + 1), &used);
    if (used != s.size() - epos - 1) throw std::invalid_argument("not a number: " + s);
  }
  bool negative = false;
  if (!mant.empty() && (mant[0] == '-' || mant[0] == '+')) {
    negative = mant[0] == '-';
    mant.erase(0, 1);
  }
  std::size_t dot = mant.find('.');
  std::string digits = mant;
  if (dot != std::string::npos) {
    digits = mant.substr(0, dot) + mant.substr(dot + 1);
    exponent -= static_cast<long>(mant.size() - dot - 1);
  }
  if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
    throw std::invalid_argument("not a number: " + s);
  mpz_class n(digits, 10);
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exponent)));
  Rational q = exponent >= 0 ? Rational(n * p) : Rational(n, p);
  q.canonicalize();
  return negative ? Rational(-q) : q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

double real_root(double x, unsigned n) {
  if (n == 0) throw std::domain_error("zeroth root");
  if (n == 1) return x;
  if (n == 2) {
    if (x < 0) throw std::domain_error("square root of negative number");
    return std::sqrt(x);
  }
  if (n == 3) return std::cbrt(x);
  if (x < 0) {
    if (n % 2 == 0) throw std::domain_error("even root of negative number");
    return -std::pow(-x, 1.0 / n);
  }
  return std::pow(x, 1.0 / n);
}

namespace {

mpz_class exact_root(const mpz_class& z, unsigned n) {
  mpz_class r;
  if (mpz_root(r.get_mpz_t(), z.get_mpz_t(), n) == 0)
    throw InexactError("no exact rational root of order " + std::to_string(n));
  return r;
}

}  // namespace

Rational real_root(const Rational& x, unsigned n) {
  if (n == 0) throw std::domain_error("zeroth root");
  if (sgn(x) < 0 && n % 2 == 0) throw std::domain_error("even root of negative number");
  if (sgn(x) == 0) return Rational(0);
  mpz_class num = x.get_num();
  bool negative = sgn(num) < 0;
  if (negative) num = -num;
  Rational r(exact_root(num, n), exact_root(x.get_den(), n));
  r.canonicalize();
  return negative ? Rational(-r) : r;
}

}  // namespace g2lap
