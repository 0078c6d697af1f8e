#pragma once

#include <array>
#include <vector>

#include "g2lap/scalar.hpp"

namespace g2lap {

struct Complex {
  Rational re, im;
  friend Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
  friend Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
  friend Complex operator*(const Complex& a, const Complex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend bool operator==(const Complex&, const Complex&) = default;
  Complex conj() const { return {re, -im}; }
};

/// w + x i + y j + z k
struct Quaternion {
  Rational w, x, y, z;
  friend Quaternion operator+(const Quaternion& a, const Quaternion& b) {
    return {a.w + b.w, a.x + b.x, a.y + b.y, a.z + b.z};
  }
  friend Quaternion operator-(const Quaternion& a, const Quaternion& b) {
    return {a.w - b.w, a.x - b.x, a.y - b.y, a.z - b.z};
  }
  friend Quaternion operator*(const Quaternion& a, const Quaternion& b) {
    return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
            a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
            a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
            a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
  }
  friend bool operator==(const Quaternion&, const Quaternion&) = default;
  Quaternion conj() const { return {w, -x, -y, -z}; }
  bool is_zero() const { return sgn(w) == 0 && sgn(x) == 0 && sgn(y) == 0 && sgn(z) == 0; }
};

template <class E, std::size_t N>
using SquareMatrix = std::array<std::array<E, N>, N>;

using ComplexMatrix4 = SquareMatrix<Complex, 4>;
using QuaternionMatrix3 = SquareMatrix<Quaternion, 3>;

template <class E, std::size_t N>
SquareMatrix<E, N> commutator(const SquareMatrix<E, N>& a, const SquareMatrix<E, N>& b) {
  SquareMatrix<E, N> r{};
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) {
      E s{};
      for (std::size_t k = 0; k < N; ++k) s = s + (a[i][k] * b[k][j] - b[i][k] * a[k][j]);
      r[i][j] = s;
    }
  return r;
}

/// Reductive su(4) = su(3) + m model with m = m1 + m6.
namespace su4_model {
std::array<ComplexMatrix4, 7> m_basis();
/// Coordinates in m_basis() of the m-component; throws if the matrix is not in su(4).
std::array<Rational, 7> project(const ComplexMatrix4& x);
std::vector<ComplexMatrix4> isotropy_basis();  // su(3) in the lower block
}  // namespace su4_model

/// sp(2) + sp(1) acting on H^3 rows (0: extra factor, 1-2: sp(2)).
namespace sp2_model {
std::array<QuaternionMatrix3, 7> m_basis();
std::array<Rational, 7> project(const QuaternionMatrix3& x);
std::vector<QuaternionMatrix3> isotropy_basis_u1();   // sp(1) + u(1)
std::vector<QuaternionMatrix3> isotropy_basis_sp1();  // sp(1) + diagonal sp(1)
}  // namespace sp2_model

}  // namespace g2lap
