#pragma once

#include <cstdint>
#include <ostream>
#include <random>
#include <vector>

#include "g2lap/homog.hpp"
#include "g2lap/laplace.hpp"
#include "oracle.hpp"

namespace oracle {

inline void PrintTo(const Form& f, std::ostream* os) {
  *os << "deg " << f.degree << ":";
  for (const auto& [t, v] : f.cleaned().c) {
    *os << " (" << v.get_str() << ")e";
    for (int i : t) *os << i;
  }
}

}  // namespace oracle

namespace g2lap {

template <class T>
void PrintTo(const KForm<T>& f, std::ostream* os) {
  *os << "deg " << f.degree() << ": " << f.to_string();
}

}  // namespace g2lap

namespace testing_support {

using g2lap::KForm;
using g2lap::ParamPoint;
using g2lap::Rational;
using g2lap::Symmetry;

inline oracle::Form to_oracle(const KForm<Rational>& a) {
  oracle::Form f{a.degree(), {}};
  for (const auto& [k, c] : a.terms()) f.c[k.indices()] = c;
  return f;
}

inline KForm<Rational> from_oracle(const oracle::Form& f) {
  KForm<Rational> a(f.degree);
  for (const auto& [t, c] : f.c) {
    if (sgn(c) == 0) continue;
    a.add_term(g2lap::MultiIndex::from_mask([&] {
                 std::uint8_t m = 0;
                 for (int i : t) m |= static_cast<std::uint8_t>(1u << (i - 1));
                 return m;
               }()),
               c);
  }
  return a;
}

inline oracle::Brackets to_oracle(const g2lap::BracketTable& t) {
  oracle::Brackets b;
  for (int i = 1; i <= 7; ++i)
    for (int j = 1; j <= 7; ++j)
      for (int k = 0; k < 7; ++k) b[i - 1][j - 1][k] = t(i, j)[k];
  return b;
}

/// Deterministic source of small random rationals and chart points.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }
  double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

  /// p/q with 1 <= p, q <= 9.
  Rational positive() { return g2lap::frac(integer(1, 9), integer(1, 9)); }
  Rational nonzero() { return integer(0, 1) ? positive() : Rational(-positive()); }

  /// Rational point on the unit circle.
  std::pair<Rational, Rational> circle() {
    const Rational t = g2lap::frac(integer(-7, 7), integer(1, 7));
    const Rational den = 1 + t * t;
    return {Rational((1 - t * t) / den), Rational(2 * t / den)};
  }

  ParamPoint<Rational> exact_point(Symmetry s) {
    ParamPoint<Rational> p;
    p.symmetry = s;
    p.A = nonzero();
    if (s == Symmetry::Sp2Sp1 || s == Symmetry::Sp2U1) p.B = sgn(p.A) * positive();
    if (s == Symmetry::SU4 || s == Symmetry::Sp2U1) {
      p.R = positive();
      std::tie(p.cos_alpha, p.sin_alpha) = circle();
    }
    return p;
  }

  ParamPoint<double> float_point(Symmetry s, double lo = 0.3, double hi = 3.0) {
    const double a = real(lo, hi) * (integer(0, 1) ? 1 : -1);
    const double sign = a > 0 ? 1 : -1;
    switch (s) {
      case Symmetry::Spin7: return g2lap::make_point(s, std::vector<double>{a});
      case Symmetry::SU4: return g2lap::make_point(s, std::vector<double>{a, real(lo, hi), real(0, 6.283)});
      case Symmetry::Sp2Sp1: return g2lap::make_point(s, std::vector<double>{a, sign * real(lo, hi)});
      case Symmetry::Sp2U1:
        return g2lap::make_point(s, std::vector<double>{a, sign * real(lo, hi), real(lo, hi), real(0, 6.283)});
    }
    return {};
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

inline double relative_difference(const std::vector<double>& a, const std::vector<double>& b) {
  double num = 0, den = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += (a[i] - b[i]) * (a[i] - b[i]);
    den += b[i] * b[i];
  }
  return std::sqrt(num / den);
}

}  // namespace testing_support
