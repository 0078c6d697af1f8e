#include "g2lap/lie_models.hpp"

#include <stdexcept>

namespace g2lap {

namespace {

Complex cplx(long re, long im) { return {Rational(re), Rational(im)}; }

Quaternion quat(long w, long x, long y, long z) { return {Rational(w), Rational(x), Rational(y), Rational(z)}; }

}  // namespace

namespace su4_model {

std::array<ComplexMatrix4, 7> m_basis() {
  std::array<ComplexMatrix4, 7> e{};
  e[0][0][0] = cplx(0, 3);
  for (int k = 1; k < 4; ++k) e[0][k][k] = cplx(0, -1);
  for (int j = 1; j <= 3; ++j) {
    auto& real = e[static_cast<std::size_t>(2 * j - 1)];
    real[0][j] = cplx(-1, 0);
    real[j][0] = cplx(1, 0);
    auto& imag = e[static_cast<std::size_t>(2 * j)];
    imag[0][j] = cplx(0, 1);
    imag[j][0] = cplx(0, 1);
  }
  return e;
}

std::array<Rational, 7> project(const ComplexMatrix4& x) {
  // anti-hermitian check
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (!(x[i][j] + x[j][i].conj() == Complex{}))
        throw std::invalid_argument("matrix is not anti-hermitian");
  std::array<Rational, 7> v;
  if (sgn(x[0][0].re) != 0) throw std::invalid_argument("diagonal entry not imaginary");
  v[0] = x[0][0].im / 3;
  for (int j = 1; j <= 3; ++j) {
    v[static_cast<std::size_t>(2 * j - 1)] = x[j][0].re;
    v[static_cast<std::size_t>(2 * j)] = x[j][0].im;
  }
  return v;
}

std::vector<ComplexMatrix4> isotropy_basis() {
  std::vector<ComplexMatrix4> h;
  for (int p = 1; p <= 3; ++p)
    for (int q = p + 1; q <= 3; ++q) {
      ComplexMatrix4 a{}, s{};
      a[p][q] = cplx(1, 0);
      a[q][p] = cplx(-1, 0);
      s[p][q] = cplx(0, 1);
      s[q][p] = cplx(0, 1);
      h.push_back(a);
      h.push_back(s);
    }
  for (int p = 1; p <= 2; ++p) {
    ComplexMatrix4 d{};
    d[p][p] = cplx(0, 1);
    d[p + 1][p + 1] = cplx(0, -1);
    h.push_back(d);
  }
  return h;
}

}  // namespace su4_model

namespace sp2_model {

std::array<QuaternionMatrix3, 7> m_basis() {
  std::array<QuaternionMatrix3, 7> e{};
  // e1, e2, e3 = i, j, -k in the (2,2) slot
  e[0][2][2] = quat(0, 1, 0, 0);
  e[1][2][2] = quat(0, 0, 1, 0);
  e[2][2][2] = quat(0, 0, 0, -1);
  const std::array<Quaternion, 4> zeta{quat(1, 0, 0, 0), quat(0, 1, 0, 0), quat(0, 0, 1, 0),
                                       quat(0, 0, 0, 1)};
  for (std::size_t l = 0; l < 4; ++l) {
    e[3 + l][1][2] = Quaternion{} - zeta[l].conj();
    e[3 + l][2][1] = zeta[l];
  }
  return e;
}

std::array<Rational, 7> project(const QuaternionMatrix3& x) {
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (!(x[i][j] + x[j][i].conj()).is_zero())
        throw std::invalid_argument("matrix is not quaternion anti-hermitian");
  if (!x[0][1].is_zero() || !x[0][2].is_zero())
    throw std::invalid_argument("matrix mixes the extra factor with sp(2)");
  // isotropy carries equal imaginary parts in slots (0,0) and (2,2)
  const Quaternion q = x[2][2] - x[0][0];
  const Quaternion& b = x[2][1];
  return {q.x, q.y, Rational(-q.z), b.w, b.x, b.y, b.z};
}

std::vector<QuaternionMatrix3> isotropy_basis_u1() {
  std::vector<QuaternionMatrix3> h;
  for (const Quaternion& q : {quat(0, 1, 0, 0), quat(0, 0, 1, 0), quat(0, 0, 0, 1)}) {
    QuaternionMatrix3 x{};
    x[1][1] = q;
    h.push_back(x);
  }
  QuaternionMatrix3 u{};
  u[0][0] = quat(0, 1, 0, 0);
  u[2][2] = quat(0, 1, 0, 0);
  h.push_back(u);
  return h;
}

std::vector<QuaternionMatrix3> isotropy_basis_sp1() {
  std::vector<QuaternionMatrix3> h;
  for (const Quaternion& q : {quat(0, 1, 0, 0), quat(0, 0, 1, 0), quat(0, 0, 0, 1)}) {
    QuaternionMatrix3 x{};
    x[1][1] = q;
    h.push_back(x);
  }
  for (const Quaternion& q : {quat(0, 1, 0, 0), quat(0, 0, 1, 0), quat(0, 0, 0, 1)}) {
    QuaternionMatrix3 x{};
    x[0][0] = q;
    x[2][2] = q;
    h.push_back(x);
  }
  return h;
}

}  // namespace sp2_model

}  // namespace g2lap
