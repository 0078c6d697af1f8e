#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "g2lap/errors.hpp"
#include "g2lap/scalar.hpp"

namespace g2lap {

inline constexpr int kDim = 7;

/// Strictly increasing index tuple in 1..7, stored as a bit set.
class MultiIndex {
 public:
  constexpr MultiIndex() = default;
  MultiIndex(std::initializer_list<int> increasing);

  static MultiIndex from_mask(std::uint8_t mask);
  static MultiIndex full() { return from_mask(0x7F); }

  int degree() const { return std::popcount(mask_); }
  std::uint8_t mask() const { return mask_; }
  bool contains(int i) const { return (mask_ >> (i - 1)) & 1u; }
  std::vector<int> indices() const;
  MultiIndex complement() const { return from_mask(static_cast<std::uint8_t>(~mask_ & 0x7F)); }
  MultiIndex with(int i) const { return from_mask(static_cast<std::uint8_t>(mask_ | (1u << (i - 1)))); }
  MultiIndex without(int i) const { return from_mask(static_cast<std::uint8_t>(mask_ & ~(1u << (i - 1)))); }
  /// 0-based position of i inside the tuple (number of smaller members).
  int position(int i) const { return std::popcount(static_cast<unsigned>(mask_ & ((1u << (i - 1)) - 1u))); }

  // degree first, then lexicographic on the tuples
  std::strong_ordering operator<=>(const MultiIndex& other) const;
  bool operator==(const MultiIndex& other) const = default;

  std::string to_string() const;

 private:
  std::uint8_t mask_ = 0;
};

/// Sign of e^I ^ e^J relative to e^{I u J}; 0 when I and J overlap.
int merge_sign(MultiIndex a, MultiIndex b);

/// Sorts an arbitrary index sequence; sign 0 flags a repeated index.
std::pair<MultiIndex, int> sort_indices(std::span<const int> indices);

/// Homogeneous k-form in canonical sparse form (no stored zeros).
template <Scalar T>
class KForm {
 public:
  using Map = std::map<MultiIndex, T>;

  explicit KForm(int degree = 0) : degree_(degree) {
    if (degree < 0 || degree > kDim) throw DegreeError("form degree out of range");
  }

  /// c * e^{i1} ^ ... ^ e^{ik}; indices need not be sorted.
  static KForm basis(std::initializer_list<int> indices, const T& c = T(1)) {
    std::vector<int> idx(indices);
    KForm f(static_cast<int>(idx.size()));
    auto [key, sign] = sort_indices(idx);
    if (sign != 0) f.add_term(key, sign > 0 ? T(c) : T(-c));
    return f;
  }

  static KForm constant(const T& c) {
    KForm f(0);
    f.add_term(MultiIndex{}, c);
    return f;
  }

  int degree() const { return degree_; }
  const Map& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  T coefficient(const MultiIndex& key) const {
    auto it = terms_.find(key);
    return it == terms_.end() ? T(0) : it->second;
  }

  void add_term(const MultiIndex& key, const T& c) {
    if (key.degree() != degree_) throw DegreeError("term degree does not match form degree");
    if (g2lap::is_zero(c, 0.0)) return;
    auto [it, inserted] = terms_.try_emplace(key, c);
    if (!inserted) {
      it->second += c;
      if (g2lap::is_zero(it->second, 0.0)) terms_.erase(it);
    }
  }

  KForm& operator+=(const KForm& o) {
    check_same_degree(o);
    for (const auto& [k, c] : o.terms_) add_term(k, c);
    return *this;
  }
  KForm& operator-=(const KForm& o) {
    check_same_degree(o);
    for (const auto& [k, c] : o.terms_) add_term(k, T(-c));
    return *this;
  }
  KForm& operator*=(const T& s) {
    if (g2lap::is_zero(s, 0.0)) {
      terms_.clear();
      return *this;
    }
    for (auto& [k, c] : terms_) c *= s;
    return *this;
  }

  friend KForm operator+(KForm a, const KForm& b) { return a += b; }
  friend KForm operator-(KForm a, const KForm& b) { return a -= b; }
  friend KForm operator-(KForm a) { return a *= T(-1); }
  friend KForm operator*(const T& s, KForm a) { return a *= s; }
  friend KForm operator*(KForm a, const T& s) { return a *= s; }

  bool operator==(const KForm& o) const { return degree_ == o.degree_ && terms_ == o.terms_; }

  /// Drops coefficients with magnitude <= eps (float cleanup).
  KForm pruned(double eps) const {
    KForm r(degree_);
    for (const auto& [k, c] : terms_)
      if (!g2lap::is_zero(c, eps)) r.terms_.emplace(k, c);
    return r;
  }

  double max_abs() const {
    double m = 0.0;
    for (const auto& [k, c] : terms_) m = std::max(m, std::abs(to_double(c)));
    return m;
  }

  /// Euclidean norm of the coefficient vector in the monomial basis.
  double coefficient_norm() const {
    double s = 0.0;
    for (const auto& [k, c] : terms_) s += to_double(c) * to_double(c);
    return std::sqrt(s);
  }

  template <Scalar U>
  KForm<U> cast() const {
    KForm<U> r(degree_);
    for (const auto& [k, c] : terms_) {
      if constexpr (std::same_as<T, U>)
        r.add_term(k, c);
      else if constexpr (std::same_as<U, double>)
        r.add_term(k, to_double(c));
      else
        r.add_term(k, Rational(c));
    }
    return r;
  }

  /// Substitutes e^i -> scale[i-1] e^i.
  KForm rescaled(const std::array<T, kDim>& scale) const {
    KForm r(degree_);
    for (const auto& [k, c] : terms_) {
      T f = c;
      for (int i : k.indices()) f *= scale[i - 1];
      r.add_term(k, f);
    }
    return r;
  }

  std::string to_string() const;

 private:
  void check_same_degree(const KForm& o) const {
    if (o.degree_ != degree_) throw DegreeError("adding forms of different degree");
  }

  int degree_ = 0;
  Map terms_;
};

template <Scalar T>
KForm<T> wedge(const KForm<T>& a, const KForm<T>& b) {
  const int deg = a.degree() + b.degree();
  if (deg > kDim) throw DegreeError("wedge degree exceeds 7");
  KForm<T> r(deg);
  for (const auto& [ka, ca] : a.terms()) {
    for (const auto& [kb, cb] : b.terms()) {
      const int s = merge_sign(ka, kb);
      if (s == 0) continue;
      T c = ca * cb;
      if (s < 0) c = -c;
      r.add_term(MultiIndex::from_mask(static_cast<std::uint8_t>(ka.mask() | kb.mask())), c);
    }
  }
  return r;
}

template <Scalar T, class... Rest>
KForm<T> wedge(const KForm<T>& a, const KForm<T>& b, const Rest&... rest) {
  return wedge(wedge(a, b), rest...);
}

/// Contraction with the basis vector e_v.
template <Scalar T>
KForm<T> interior(int v, const KForm<T>& a) {
  if (v < 1 || v > kDim) throw std::out_of_range("basis vector index out of range");
  if (a.degree() == 0) throw DegreeError("interior product of a 0-form");
  KForm<T> r(a.degree() - 1);
  for (const auto& [k, c] : a.terms()) {
    if (!k.contains(v)) continue;
    r.add_term(k.without(v), k.position(v) % 2 == 0 ? T(c) : T(-c));
  }
  return r;
}

template <Scalar T>
T top_coefficient(const KForm<T>& a) {
  if (a.degree() != kDim) throw DegreeError("top_coefficient needs a 7-form");
  return a.coefficient(MultiIndex::full());
}

/// Value of a on the basis vectors (e_{i1}, ..., e_{ik}) in the given order.
template <Scalar T>
T evaluate(const KForm<T>& a, std::span<const int> vectors) {
  if (static_cast<int>(vectors.size()) != a.degree()) throw DegreeError("wrong number of arguments");
  auto [key, sign] = sort_indices(vectors);
  if (sign == 0) return T(0);
  T c = a.coefficient(key);
  return sign > 0 ? c : T(-c);
}

/// max |a_I - b_I| <= eps (exact equality for rationals).
template <Scalar T>
bool approx_equal(const KForm<T>& a, const KForm<T>& b, double eps) {
  if (a.degree() != b.degree()) return false;
  if constexpr (std::same_as<T, Rational>) {
    (void)eps;
    return a == b;
  } else {
    return (a - b).max_abs() <= eps;
  }
}

template <Scalar T>
std::string KForm<T>::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [k, c] : terms_) {
    std::string coeff;
    if constexpr (std::same_as<T, Rational>)
      coeff = g2lap::to_string(c);
    else
      coeff = std::to_string(c);
    if (!first) out += " + ";
    first = false;
    out += "(" + coeff + ")" + k.to_string();
  }
  return out;
}

}  // namespace g2lap
