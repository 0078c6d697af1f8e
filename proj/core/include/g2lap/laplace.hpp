#pragma once

#include <optional>
#include <vector>

#include "g2lap/dense.hpp"
#include "g2lap/homog.hpp"

namespace g2lap {

template <Scalar T>
struct LaplacianMatrix {
  Symmetry symmetry = Symmetry::SU4;
  DenseMatrix<T> matrix;  // column k = basis3 coordinates of Delta beta_k
  DenseMatrix<T> gram;    // g(beta_k, beta_l)
  DiagonalMetric<T> metric;  // metric in the derivative frame (see derivative_space)
};

/// D = *_phi d restricted to the coclosed part of basis3.
template <Scalar T>
struct StarDerivativeMatrix {
  Symmetry symmetry = Symmetry::SU4;
  std::vector<std::size_t> block;  // basis3 indices spanning the coclosed block
  DenseMatrix<T> matrix;
};

/// Metric of p's form in the derivative frame; NotPositive unless p is positive.
template <Scalar T>
DiagonalMetric<T> metric_at(const ParamPoint<T>& p);

/// (d delta + delta d) a with delta = (-1)^k *d* on k-forms, computed in `frame`.
template <Scalar T>
KForm<T> hodge_laplacian(const KForm<T>& a, const DiagonalMetric<T>& g, const SymmetrySpace& frame);

template <Scalar T>
LaplacianMatrix<T> laplacian_matrix(const ParamPoint<T>& p);

/// First-principles basis3 coordinates of Delta_phi phi.
template <Scalar T>
std::vector<T> laplacian_coefficients(const ParamPoint<T>& p);

template <Scalar T>
KForm<T> g2_laplacian(const ParamPoint<T>& p);

/// basis3 coordinates of *_phi d phi.
template <Scalar T>
std::vector<T> star_derivative_coefficients(const ParamPoint<T>& p);

/// basis3 indices whose elements are coclosed (metric independent).
std::vector<std::size_t> coclosed_indices(Symmetry s);

template <Scalar T>
StarDerivativeMatrix<T> star_derivative_matrix(const ParamPoint<T>& p);

struct TorsionReport {
  bool closed = false;
  bool coclosed = false;
  std::optional<double> tau0;  // set iff d phi = tau0 * *phi
};

template <Scalar T>
TorsionReport torsion_type(const ParamPoint<T>& p, double eps = 1e-9);

/// Closed-form coordinates of Delta_phi phi in basis3, as functions of the
/// chart parameters (cos/sin of the angle passed separately). Works for any
/// field-like T, which lets callers differentiate it with dual numbers.
template <class T>
std::vector<T> closed_form_map(Symmetry s, const T& A, const T& B, const T& R, const T& c, const T& sn) {
  auto n = [](long v) { return T(v); };
  switch (s) {
    case Symmetry::Spin7:
      return {T(n(16) * A)};
    case Symmetry::SU4: {
      T x = n(16) * ipow(A, 9) * ipow(R, -8) / n(9);
      T q = n(144) * ipow(A, -6) * ipow(R, 7);
      return {x, T(q * c), T(q * sn)};
    }
    case Symmetry::Sp2Sp1: {
      T x = n(24) * ipow(A, 7) * ipow(B, -6) + n(24) * ipow(A, 4) * ipow(B, -3);
      T y = n(4) * A + n(24) * ipow(A, 4) * ipow(B, -3) + n(4) * ipow(A, -2) * ipow(B, 3);
      return {x, y};
    }
    case Symmetry::Sp2U1: {
      T x = n(8) * ipow(A, 7) * ipow(B, 2) * ipow(R, -8) + n(16) * ipow(A, 7) * ipow(B, -4) * ipow(R, -2) -
            n(8) * ipow(A, 4) * ipow(B, 5) * ipow(R, -8) + n(16) * ipow(A, 4) * ipow(B, 2) * ipow(R, -5) * c +
            n(16) * ipow(A, 4) * ipow(B, -1) * ipow(R, -2);
      T y = n(8) * ipow(A, 4) * ipow(B, 5) * ipow(R, -8) + n(16) * ipow(A, 4) * ipow(B, 2) * ipow(R, -5) * c -
            n(4) * A * ipow(B, 8) * ipow(R, -8) + n(8) * A * ipow(B, 2) * ipow(R, -2) +
            n(4) * ipow(A, -2) * ipow(B, 11) * ipow(R, -8) - n(8) * ipow(A, -2) * ipow(B, 8) * ipow(R, -5) * c +
            n(8) * ipow(A, -2) * ipow(B, 5) * ipow(R, -2);
      T qc = n(8) * ipow(A, 4) * ipow(B, -1) * ipow(R, -2) + n(16) * ipow(A, 4) * ipow(B, -4) * R * c +
             n(4) * A * ipow(B, 2) * ipow(R, -2) - n(4) * ipow(A, -2) * ipow(B, 5) * ipow(R, -2) +
             n(8) * ipow(A, -2) * ipow(B, 2) * R * c;
      T qs = (n(16) * ipow(A, 4) * ipow(B, -4) + n(8) * ipow(A, -2) * ipow(B, 2)) * R * sn;
      return {x, y, qc, qs};
    }
  }
  return {};
}

template <Scalar T>
std::vector<T> closed_form_laplacian(const ParamPoint<T>& p) {
  if (!is_positive(p)) throw NotPositive("closed-form Laplacian needs a positive point");
  return closed_form_map<T>(p.symmetry, p.A, p.B, p.R, p.cos_alpha, p.sin_alpha);
}

}  // namespace g2lap
