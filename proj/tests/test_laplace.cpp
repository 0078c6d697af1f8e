#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <numbers>

#include "g2lap/laplace.hpp"
#include "g2lap/solve.hpp"
#include "support.hpp"

using namespace g2lap;
using testing_support::Sampler;
using testing_support::to_oracle;

namespace {

using Q = Rational;
using RForm = KForm<Rational>;

ParamPoint<Q> exact(Symmetry s, Q A, Q B, Q R, Q c = 1, Q sn = 0) {
  ParamPoint<Q> p;
  p.symmetry = s;
  p.A = A;
  p.B = B;
  p.R = R;
  p.cos_alpha = c;
  p.sin_alpha = sn;
  return p;
}

Eigen::MatrixXd to_eigen(const DenseMatrix<double>& m) {
  Eigen::MatrixXd r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j);
  return r;
}

const std::array<Symmetry, 3> kWithBrackets{Symmetry::SU4, Symmetry::Sp2Sp1, Symmetry::Sp2U1};

}  // namespace

TEST(G2Laplacian, ClosedFormEqualsFirstPrinciplesExactly) {
  Sampler s(41);
  for (Symmetry sym : kAllSymmetries)
    for (int trial = 0; trial < 25; ++trial) {
      const auto p = s.exact_point(sym);
      EXPECT_EQ(closed_form_laplacian(p), laplacian_coefficients(p)) << symmetry_name(sym);
    }
}

TEST(G2Laplacian, ClosedFormEqualsFirstPrinciplesInFloat) {
  Sampler s(42);
  for (Symmetry sym : kAllSymmetries)
    for (int trial = 0; trial < 100; ++trial) {
      const auto p = s.float_point(sym);
      EXPECT_LT(testing_support::relative_difference(laplacian_coefficients(p), closed_form_laplacian(p)), 1e-9);
    }
}

TEST(G2Laplacian, MatchesIndependentOracle) {
  // *d*d phi - d*d* phi composed entirely from the brute-force oracle
  Sampler s(43);
  for (Symmetry sym : kWithBrackets) {
    const auto& sp = preset(sym);
    const auto br = to_oracle(*sp.brackets);
    for (int trial = 0; trial < 2; ++trial) {
      const auto p = s.exact_point(sym);
      const auto lap = oracle::g2_laplacian(to_oracle(to_form(p)), br);
      EXPECT_EQ(lap, to_oracle(g2_laplacian(p))) << symmetry_name(sym);
      const auto coeffs = closed_form_laplacian(p);
      RForm expected(3);
      for (std::size_t k = 0; k < coeffs.size(); ++k) expected += RForm(sp.basis3[k] * coeffs[k]);
      EXPECT_EQ(lap, to_oracle(expected));
    }
  }
}

TEST(G2Laplacian, SU4UnitPoint) {
  const auto p = exact(Symmetry::SU4, 1, 1, 1);
  const auto m = laplacian_matrix(p).matrix;
  EXPECT_EQ(m(0, 0), Q(16, 9));
  EXPECT_EQ(m(1, 1), 144);
  EXPECT_EQ(m(2, 2), 144);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (i != j) EXPECT_EQ(sgn(m(i, j)), 0);
  EXPECT_EQ(laplacian_coefficients(p), (std::vector<Q>{Q(16, 9), 144, 0}));
}

TEST(G2Laplacian, SpinSeven) {
  for (const Q& A : {Q(1), Q(2), Q(-3, 2)})
    EXPECT_EQ(laplacian_coefficients(exact(Symmetry::Spin7, A, 1, 1)), (std::vector<Q>{16 * A}));
  // fixed points +-4 phi0 in chart coordinates, i.e. +-64 phi0 as forms
  EXPECT_EQ(laplacian_coefficients(exact(Symmetry::Spin7, 4, 1, 1)), (std::vector<Q>{64}));
}

TEST(G2Laplacian, Sp2Sp1UnitPoint) {
  EXPECT_EQ(laplacian_coefficients(exact(Symmetry::Sp2Sp1, 1, 1, 1)), (std::vector<Q>{48, 32}));
  EXPECT_EQ(laplacian_coefficients(exact(Symmetry::Sp2Sp1, 2, 2, 1)), (std::vector<Q>{96, 64}));
}

TEST(G2Laplacian, Sp2U1LaplacianOfVIIsPositive) {
  Sampler s(44);
  for (int trial = 0; trial < 20; ++trial) {
    const auto p = s.exact_point(Symmetry::Sp2U1);
    const auto m = laplacian_matrix(p).matrix;
    const Q expected = (8 * ipow(p.A, -2) * ipow(p.B, 2) + 16 * ipow(p.A, 4) * ipow(p.B, -4)) * ipow(p.R, -2);
    EXPECT_EQ(m(3, 3), expected);
    EXPECT_GT(sgn(m(3, 3)), 0);
    for (int i = 0; i < 3; ++i) EXPECT_EQ(sgn(m(i, 3)), 0);
  }
}

TEST(G2Laplacian, Sp2U1CoclosedBlockAtUnitPoint) {
  const auto p = exact(Symmetry::Sp2U1, 1, 1, 1);
  const auto D = star_derivative_matrix(p);
  EXPECT_EQ(D.block, (std::vector<std::size_t>{0, 1, 2}));
  const long N[3][3] = {{0, -4, -8}, {-2, 2, -4}, {-2, -2, 0}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) EXPECT_EQ(D.matrix(i, j), N[i][j]);
  const auto D2 = D.matrix * D.matrix;
  const auto lap = laplacian_matrix(p).matrix;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) EXPECT_EQ(lap(i, j), D2(i, j));
}

TEST(G2Laplacian, StarDerivativeSquaresToCoclosedBlock) {
  Sampler s(45);
  for (Symmetry sym : kWithBrackets)
    for (int trial = 0; trial < 10; ++trial) {
      const auto p = s.exact_point(sym);
      const auto D = star_derivative_matrix(p);
      const auto lap = laplacian_matrix(p).matrix;
      const auto D2 = D.matrix * D.matrix;
      for (std::size_t i = 0; i < D.block.size(); ++i)
        for (std::size_t j = 0; j < D.block.size(); ++j) EXPECT_EQ(D2(i, j), lap(D.block[i], D.block[j]));
    }
}

TEST(G2Laplacian, SelfAdjointPositiveAndInvertible) {
  Sampler s(46);
  for (Symmetry sym : kWithBrackets)
    for (int trial = 0; trial < 30; ++trial) {
      const auto p = s.float_point(sym);
      const auto L = laplacian_matrix(p);
      const Eigen::MatrixXd M = to_eigen(L.matrix), G = to_eigen(L.gram);
      const double scale = (G * M).norm();
      EXPECT_LT((M.transpose() * G - G * M).norm(), 1e-10 * scale);
      Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (G * M + (G * M).transpose()), G);
      EXPECT_GT(es.eigenvalues().minCoeff(), 0.0) << symmetry_name(sym);
      EXPECT_GT(std::abs(M.determinant()), 0.0);
    }
}

TEST(G2Laplacian, ScalingLawExact) {
  Sampler s(47);
  for (Symmetry sym : kAllSymmetries)
    for (int trial = 0; trial < 10; ++trial) {
      const auto p = s.exact_point(sym);
      for (long k : {2L, 3L, -2L}) {
        auto q = p;
        q.A *= k;
        q.B *= k;
        q.R *= std::abs(k);
        if (k < 0) {
          q.cos_alpha = -q.cos_alpha;
          q.sin_alpha = -q.sin_alpha;
        }
        ASSERT_EQ(to_form(q), RForm(to_form(p) * Q(k * k * k)));
        const auto a = laplacian_coefficients(p), b = laplacian_coefficients(q);
        for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(b[i], Q(k) * a[i]);
      }
    }
}

TEST(G2Laplacian, SU4RotationEquivariance) {
  Sampler s(48);
  for (int trial = 0; trial < 50; ++trial) {
    const auto p = s.float_point(Symmetry::SU4);
    const double theta = s.real(-3, 3);
    auto q = make_point(Symmetry::SU4, std::vector<double>{p.A, p.R, p.alpha() + theta});
    const auto a = closed_form_laplacian(p), b = laplacian_coefficients(q);
    const std::vector<double> rotated{a[0], std::cos(theta) * a[1] - std::sin(theta) * a[2],
                                      std::sin(theta) * a[1] + std::cos(theta) * a[2]};
    EXPECT_LT(testing_support::relative_difference(b, rotated), 1e-12);
  }
}

TEST(Torsion, Examples) {
  const auto phi0 = make_point(Symmetry::SU4, std::vector<double>{1, 1, 0});
  const auto t0 = torsion_type(phi0);
  EXPECT_TRUE(t0.coclosed);
  EXPECT_FALSE(t0.closed);

  const double a = 4 * std::cbrt(3.0);
  const auto circle = make_point(Symmetry::SU4, std::vector<double>{a, 4, 0.7});
  const auto t1 = torsion_type(circle);
  EXPECT_TRUE(t1.coclosed);
  ASSERT_TRUE(t1.tau0);
  EXPECT_NEAR(*t1.tau0, 1.0, 1e-12);

  const auto A = family_curve_solve(1.0);
  ASSERT_TRUE(A);
  const auto curve = make_point(Symmetry::Sp2U1, std::vector<double>{*A, 1.0, family_radius(*A, 1.0), 0});
  const auto t2 = torsion_type(curve);
  EXPECT_TRUE(t2.coclosed);
  EXPECT_FALSE(t2.tau0);

  const auto off = make_point(Symmetry::Sp2U1, std::vector<double>{1, 1, 1, 1});
  EXPECT_FALSE(torsion_type(off).coclosed);
  EXPECT_THROW(torsion_type(make_point(Symmetry::SU4, std::vector<double>{1, 0, 0})), NotPositive);
}

TEST(G2Laplacian, NonPositiveInputThrows) {
  EXPECT_THROW(laplacian_coefficients(make_point(Symmetry::SU4, std::vector<double>{1, 0, 0})), NotPositive);
  EXPECT_THROW(laplacian_coefficients(make_point(Symmetry::Sp2Sp1, std::vector<double>{1, -1})), NotPositive);
  EXPECT_THROW(closed_form_laplacian(make_point(Symmetry::Sp2U1, std::vector<double>{1, 1, -1, 0})), NotPositive);
}
