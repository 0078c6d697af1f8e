#pragma once

#include <initializer_list>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "g2lap/scalar.hpp"

namespace g2lap {

/// Univariate polynomial with exact rational coefficients, ascending degree.
class RealPolynomial {
 public:
  RealPolynomial() = default;
  RealPolynomial(std::initializer_list<long> ascending);
  explicit RealPolynomial(std::vector<Rational> ascending);

  static RealPolynomial monomial(const Rational& c, int degree);
  static RealPolynomial variable() { return monomial(Rational(1), 1); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c_.empty(); }
  const std::vector<Rational>& coefficients() const { return c_; }
  const Rational& leading() const { return c_.back(); }

  Rational operator()(const Rational& x) const;
  double operator()(double x) const;

  RealPolynomial derivative() const;
  RealPolynomial pow(unsigned e) const;

  friend RealPolynomial operator+(const RealPolynomial& a, const RealPolynomial& b);
  friend RealPolynomial operator-(const RealPolynomial& a, const RealPolynomial& b);
  friend RealPolynomial operator*(const RealPolynomial& a, const RealPolynomial& b);
  friend bool operator==(const RealPolynomial& a, const RealPolynomial& b) { return a.c_ == b.c_; }

  /// Quotient and remainder of Euclidean division.
  std::pair<RealPolynomial, RealPolynomial> divmod(const RealPolynomial& d) const;
  RealPolynomial monic() const;

  /// Sign changes of the coefficient sequence (zeros skipped).
  int descartes_sign_changes() const;
  /// Coefficient magnitude bound: every real root lies in (-M, M).
  Rational root_bound() const;

  std::string to_string(char var = 't') const;

 private:
  void trim();
  std::vector<Rational> c_;
};

RealPolynomial gcd(const RealPolynomial& a, const RealPolynomial& b);
/// p / gcd(p, p'): same distinct roots, all simple.
RealPolynomial square_free_part(const RealPolynomial& p);

/// Sturm chain p0 = p, p1 = p', p_{k+1} = -rem(p_{k-1}, p_k).
std::vector<RealPolynomial> sturm_sequence(const RealPolynomial& p);
/// Number of distinct real roots in (a, b].
int sturm_count(const std::vector<RealPolynomial>& chain, const Rational& a, const Rational& b);

struct IsolatedRoot {
  Rational lo, hi;  // root in (lo, hi], or lo == hi for an exact rational root
  double value = 0.0;
  bool exact = false;
};

struct RootIsolation {
  std::vector<IsolatedRoot> roots;  // distinct, ascending
  int descartes_positive = 0;       // sign changes of the original coefficients
  int sturm_positive = 0;           // distinct roots in (0, inf), certified
};

/// Distinct real roots in [lo, hi] (whole line by default), refined to width < 1e-12.
RootIsolation real_roots(const RealPolynomial& p,
                         std::optional<std::pair<Rational, Rational>> interval = std::nullopt,
                         double width = 1e-12);

}  // namespace g2lap
