#pragma once

#include <gmpxx.h>

#include <cmath>
#include <concepts>
#include <string>
#include <string_view>

namespace g2lap {

using Rational = mpq_class;

/// The two interchangeable coefficient backends.
template <class T>
concept Scalar = std::same_as<T, double> || std::same_as<T, Rational>;

Rational frac(long num, long den = 1);

/// Accepts "3", "-7/2", "0.125", "1e-3". Decimal input is converted exactly.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);

inline bool is_zero(double v, double eps) { return std::abs(v) <= eps; }
inline bool is_zero(const Rational& v, double /*eps*/ = 0.0) { return sgn(v) == 0; }

inline int sign_of(double v) { return (v > 0.0) - (v < 0.0); }
inline int sign_of(const Rational& v) { return sgn(v); }

inline double to_double(double v) { return v; }
inline double to_double(const Rational& v) { return v.get_d(); }

inline double abs_value(double v) { return std::abs(v); }
inline Rational abs_value(const Rational& v) { return abs(v); }

// Real n-th root; for odd n the sign is kept. The rational overload throws
// InexactError unless numerator and denominator are perfect n-th powers.
double real_root(double x, unsigned n);
Rational real_root(const Rational& x, unsigned n);

template <class T>
T ipow(const T& x, int e) {
  if (e < 0) return T(1) / ipow(x, -e);
  T result(1);
  T base = x;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

template <Scalar T>
T from_rational(const Rational& q) {
  if constexpr (std::same_as<T, Rational>)
    return q;
  else
    return q.get_d();
}

}  // namespace g2lap
