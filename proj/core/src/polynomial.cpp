#include "g2lap/polynomial.hpp"

#include <stdexcept>

namespace g2lap {

RealPolynomial::RealPolynomial(std::initializer_list<long> ascending) {
  for (long v : ascending) c_.emplace_back(v);
  trim();
}

RealPolynomial::RealPolynomial(std::vector<Rational> ascending) : c_(std::move(ascending)) { trim(); }

RealPolynomial RealPolynomial::monomial(const Rational& c, int degree) {
  std::vector<Rational> v(static_cast<std::size_t>(degree + 1), Rational(0));
  v.back() = c;
  return RealPolynomial(std::move(v));
}

void RealPolynomial::trim() {
  while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
}

Rational RealPolynomial::operator()(const Rational& x) const {
  Rational r(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
  return r;
}

double RealPolynomial::operator()(double x) const {
  double r = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + it->get_d();
  return r;
}

RealPolynomial RealPolynomial::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<Rational> d(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<long>(i);
  return RealPolynomial(std::move(d));
}

RealPolynomial RealPolynomial::pow(unsigned e) const {
  RealPolynomial r{1};
  for (unsigned i = 0; i < e; ++i) r = r * *this;
  return r;
}

RealPolynomial operator+(const RealPolynomial& a, const RealPolynomial& b) {
  std::vector<Rational> v(std::max(a.c_.size(), b.c_.size()), Rational(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) v[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) v[i] += b.c_[i];
  return RealPolynomial(std::move(v));
}

RealPolynomial operator-(const RealPolynomial& a, const RealPolynomial& b) {
  std::vector<Rational> v(std::max(a.c_.size(), b.c_.size()), Rational(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) v[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) v[i] -= b.c_[i];
  return RealPolynomial(std::move(v));
}

RealPolynomial operator*(const RealPolynomial& a, const RealPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> v(a.c_.size() + b.c_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
  return RealPolynomial(std::move(v));
}

std::pair<RealPolynomial, RealPolynomial> RealPolynomial::divmod(const RealPolynomial& d) const {
  if (d.is_zero()) throw std::domain_error("polynomial division by zero");
  std::vector<Rational> rem = c_;
  const int dd = d.degree();
  std::vector<Rational> quot(static_cast<std::size_t>(std::max(degree() - dd + 1, 0)), Rational(0));
  for (int k = degree() - dd; k >= 0; --k) {
    const Rational q = rem[static_cast<std::size_t>(k + dd)] / d.leading();
    quot[static_cast<std::size_t>(k)] = q;
    if (sgn(q) == 0) continue;
    for (int i = 0; i <= dd; ++i) rem[static_cast<std::size_t>(k + i)] -= q * d.c_[static_cast<std::size_t>(i)];
  }
  if (dd >= 0 && rem.size() > static_cast<std::size_t>(dd)) rem.resize(static_cast<std::size_t>(dd));
  return {RealPolynomial(std::move(quot)), RealPolynomial(std::move(rem))};
}

RealPolynomial RealPolynomial::monic() const {
  if (is_zero()) return {};
  std::vector<Rational> v = c_;
  const Rational lead = leading();
  for (auto& x : v) x /= lead;
  return RealPolynomial(std::move(v));
}

int RealPolynomial::descartes_sign_changes() const {
  int changes = 0, last = 0;
  for (const auto& c : c_) {
    const int s = sgn(c);
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

Rational RealPolynomial::root_bound() const {
  if (degree() < 1) return Rational(1);
  Rational m(0);
  for (std::size_t i = 0; i + 1 < c_.size(); ++i) {
    Rational r = abs(c_[i] / leading());
    if (r > m) m = r;
  }
  return m + 1;
}

std::string RealPolynomial::to_string(char var) const {
  if (is_zero()) return "0";
  std::string out;
  for (int k = degree(); k >= 0; --k) {
    const Rational& c = c_[static_cast<std::size_t>(k)];
    if (sgn(c) == 0) continue;
    const bool neg = sgn(c) < 0;
    const Rational mag = abs(c);
    if (out.empty())
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    const bool unit = mag == 1 && k > 0;
    if (!unit) out += mag.get_str();
    if (k > 0) out += std::string(1, var) + (k > 1 ? "^" + std::to_string(k) : "");
  }
  return out;
}

RealPolynomial gcd(const RealPolynomial& a, const RealPolynomial& b) {
  RealPolynomial x = a, y = b;
  while (!y.is_zero()) {
    auto r = x.divmod(y).second;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

RealPolynomial square_free_part(const RealPolynomial& p) {
  if (p.degree() < 1) return p;
  return p.divmod(gcd(p, p.derivative())).first;
}

std::vector<RealPolynomial> sturm_sequence(const RealPolynomial& p) {
  std::vector<RealPolynomial> chain{p};
  if (p.degree() < 1) return chain;
  chain.push_back(p.derivative());
  while (chain.back().degree() > 0) {
    auto r = chain[chain.size() - 2].divmod(chain.back()).second;
    if (r.is_zero()) break;
    chain.push_back(RealPolynomial{} - r);
  }
  return chain;
}

namespace {

int variations(const std::vector<RealPolynomial>& chain, const Rational& x) {
  int changes = 0, last = 0;
  for (const auto& q : chain) {
    const int s = sgn(q(x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

}  // namespace

int sturm_count(const std::vector<RealPolynomial>& chain, const Rational& a, const Rational& b) {
  return variations(chain, a) - variations(chain, b);
}

namespace {

struct Isolator {
  const RealPolynomial& p;  // square-free
  std::vector<RealPolynomial> chain;
  Rational width;
  std::vector<IsolatedRoot> out;

  void refine(Rational a, Rational b) {
    // exactly one root in (a, b]
    if (sgn(p(b)) == 0) {
      out.push_back({b, b, b.get_d(), true});
      return;
    }
    while (b - a >= width) {
      Rational m = (a + b) / 2;
      if (sgn(p(m)) == 0) {
        out.push_back({m, m, m.get_d(), true});
        return;
      }
      if (sturm_count(chain, a, m) == 1)
        b = m;
      else
        a = m;
    }
    out.push_back({a, b, Rational((a + b) / 2).get_d(), false});
  }

  void isolate(const Rational& a, const Rational& b, int n) {
    if (n == 0) return;
    if (n == 1) {
      refine(a, b);
      return;
    }
    const Rational m = (a + b) / 2;
    isolate(a, m, sturm_count(chain, a, m));
    isolate(m, b, sturm_count(chain, m, b));
  }
};

}  // namespace

RootIsolation real_roots(const RealPolynomial& p, std::optional<std::pair<Rational, Rational>> interval,
                         double width) {
  if (p.is_zero()) throw std::invalid_argument("real_roots of the zero polynomial");
  RootIsolation result;
  result.descartes_positive = p.descartes_sign_changes();
  if (p.degree() < 1) return result;

  const RealPolynomial sq = square_free_part(p);
  Isolator iso{sq, sturm_sequence(sq), Rational(width), {}};
  result.sturm_positive = sturm_count(iso.chain, Rational(0), sq.root_bound());
  Rational lo, hi;
  if (interval) {
    lo = interval->first;
    hi = interval->second;
    if (hi < lo) throw std::invalid_argument("empty interval");
    if (sgn(sq(lo)) == 0) iso.out.push_back({lo, lo, lo.get_d(), true});
  } else {
    hi = sq.root_bound();
    lo = -hi;
  }
  if (lo < hi) iso.isolate(lo, hi, sturm_count(iso.chain, lo, hi));
  result.roots = std::move(iso.out);
  return result;
}

}  // namespace g2lap
