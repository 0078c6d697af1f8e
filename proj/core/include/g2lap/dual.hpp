#pragma once

namespace g2lap {

/// Forward-mode dual number v + d*eps with eps^2 = 0.
template <class T>
struct Dual {
  T v{0};
  T d{0};

  Dual() = default;
  Dual(long c) : v(c), d(0) {}  // NOLINT(google-explicit-constructor)
  Dual(T value, T derivative) : v(std::move(value)), d(std::move(derivative)) {}

  friend Dual operator+(const Dual& a, const Dual& b) { return {T(a.v + b.v), T(a.d + b.d)}; }
  friend Dual operator-(const Dual& a, const Dual& b) { return {T(a.v - b.v), T(a.d - b.d)}; }
  friend Dual operator-(const Dual& a) { return {T(-a.v), T(-a.d)}; }
  friend Dual operator*(const Dual& a, const Dual& b) { return {T(a.v * b.v), T(a.d * b.v + a.v * b.d)}; }
  friend Dual operator/(const Dual& a, const Dual& b) {
    return {T(a.v / b.v), T((a.d * b.v - a.v * b.d) / (b.v * b.v))};
  }
};

}  // namespace g2lap
