#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "g2lap/polynomial.hpp"
#include "g2lap/solve.hpp"
#include "support.hpp"

using namespace g2lap;
using testing_support::Sampler;

namespace {

using Q = Rational;
using RPoly = RealPolynomial;

std::vector<double> image(const ParamPoint<double>& p) { return closed_form_laplacian(p); }

DenseMatrix<double> matrix3(std::initializer_list<std::initializer_list<double>> rows) {
  DenseMatrix<double> m(3, 3);
  std::size_t i = 0;
  for (const auto& r : rows) {
    std::size_t j = 0;
    for (double v : r) m(i, j++) = v;
    ++i;
  }
  return m;
}

}  // namespace

TEST(RealRoots, CubicWithRationalRoots) {
  const RPoly t = RPoly::variable();
  const auto iso = real_roots(t * t * t - t);
  ASSERT_EQ(iso.roots.size(), 3u);
  EXPECT_NEAR(iso.roots[0].value, -1, 1e-12);
  EXPECT_NEAR(iso.roots[1].value, 0, 1e-12);
  EXPECT_NEAR(iso.roots[2].value, 1, 1e-12);
  EXPECT_EQ(iso.sturm_positive, 1);
}

TEST(RealRoots, SturmCountsAgreeWithIsolation) {
  const RPoly p{-216, -648, -432, -108, 126, 37, 21, 3, 1};
  const auto chain = sturm_sequence(p);
  EXPECT_EQ(sturm_count(chain, Q(0), p.root_bound()), 1);
  const auto iso = real_roots(p);
  EXPECT_EQ(iso.descartes_positive, 1);
  EXPECT_EQ(iso.sturm_positive, 1);
  for (const auto& r : iso.roots) EXPECT_NEAR(p(r.value) / 1e3, 0, 1e-6);
}

TEST(RealRoots, NearlyParallelEliminationPolynomial) {
  const RPoly B = RPoly::variable();
  const RPoly b5 = RPoly::monomial(Q(1), 5);
  const RPoly q = b5 - RPoly::monomial(Q(2), 4) + RPoly{1};
  const RPoly poly = q.pow(5) * (B + RPoly{2}) - (b5 - RPoly{1}).pow(4) * (B - RPoly{1});
  const auto iso = real_roots(poly);
  ASSERT_EQ(iso.roots.size(), 4u);
  EXPECT_EQ(sgn(poly(Q(1))), 0);
  int positive = 0;
  for (const auto& r : iso.roots) positive += r.value > 0;
  EXPECT_EQ(positive, 2);
  EXPECT_EQ(iso.sturm_positive, 2);
}

TEST(RealRoots, QuinticHasOnePositiveRoot) {
  const RPoly p = RPoly::monomial(Q(6), 5) - RPoly{1, 1};
  const auto iso = real_roots(p);
  EXPECT_EQ(iso.sturm_positive, 1);
  EXPECT_EQ(iso.descartes_positive, 1);
  // the same root drives the curve solver at B = 1
  double root = 0;
  for (const auto& r : iso.roots)
    if (r.value > 0) root = r.value;
  EXPECT_NEAR(6 * std::pow(root, 5), root + 1, 1e-10);
}

TEST(RealRoots, SquareFreePart) {
  const RPoly t = RPoly::variable();
  const RPoly p = (t - RPoly{1}).pow(3) * (t + RPoly{2});
  EXPECT_EQ(square_free_part(p).degree(), 2);
  EXPECT_EQ(real_roots(p).roots.size(), 2u);
}

TEST(Poisson, SU4Examples) {
  const std::vector<double> target{16.0 / 9.0, 144, 0};
  const auto r = poisson_solve(target, Symmetry::SU4);
  EXPECT_NEAR(r.point.A, 1, 1e-12);
  EXPECT_NEAR(r.point.R, 1, 1e-12);
  EXPECT_NEAR(r.point.alpha(), 0, 1e-12);
  EXPECT_LT(r.relative_residual, 1e-12);
}

TEST(Poisson, Sp2Sp1Example) {
  const std::vector<double> target{48, 32};
  const auto r = poisson_solve(target, Symmetry::Sp2Sp1);
  EXPECT_NEAR(r.point.A, 1, 1e-10);
  EXPECT_NEAR(r.point.B, 1, 1e-10);
}

TEST(Poisson, SpinSevenInverse) {
  const std::vector<double> target{-32};
  const auto r = poisson_solve(target, Symmetry::Spin7);
  EXPECT_NEAR(r.point.A, -2, 1e-14);
}

TEST(Poisson, RoundTripClosedFormSymmetries) {
  Sampler s(51);
  for (Symmetry sym : {Symmetry::Spin7, Symmetry::SU4, Symmetry::Sp2Sp1})
    for (int trial = 0; trial < 200; ++trial) {
      const auto p = s.float_point(sym);
      const auto target = image(p);
      const auto r = poisson_solve(target, sym);
      EXPECT_LT(r.relative_residual, 1e-10) << symmetry_name(sym);
      const auto back = coordinates(r.point), want = coordinates(p);
      EXPECT_LT(testing_support::relative_difference(
                    std::vector<double>(back.begin(), back.begin() + std::min<std::ptrdiff_t>(2, back.size())),
                    std::vector<double>(want.begin(), want.begin() + std::min<std::ptrdiff_t>(2, want.size()))),
                1e-8);
      EXPECT_EQ(r.point.A > 0, p.A > 0) << "orientation";
    }
}

TEST(Poisson, Sp2U1RoundTripNearLocus) {
  Sampler s(52);
  for (int trial = 0; trial < 60; ++trial) {
    const double A = s.real(0.5, 2), B = s.real(0.5, 2);
    const double R = B * s.real(0.95, 1.05);
    const double base = s.integer(0, 1) ? std::numbers::pi : 0.0;
    const double alpha = base + s.real(-0.05, 0.05);
    const auto p = make_point(Symmetry::Sp2U1, std::vector<double>{A, B, R, alpha});
    const auto target = image(p);
    const auto seed = make_point(Symmetry::Sp2U1, std::vector<double>{A, B, B, base});
    const auto r = poisson_solve(target, Symmetry::Sp2U1, seed);
    EXPECT_LT(r.relative_residual, 1e-10);
    EXPECT_GT(r.point.A * r.point.B, 0);
  }
}

TEST(Poisson, Sp2U1DefaultSeed) {
  const auto p = make_point(Symmetry::Sp2U1, std::vector<double>{1.2, 0.9, 0.9, 0.0});
  const auto r = poisson_solve(image(p), Symmetry::Sp2U1);
  EXPECT_LT(r.relative_residual, 1e-10);
}

TEST(Poisson, InvalidTargets) {
  EXPECT_THROW(poisson_solve(std::vector<double>{0}, Symmetry::Spin7), NotPositiveTarget);
  EXPECT_THROW(poisson_solve(std::vector<double>{1, 0, 0}, Symmetry::SU4), NotPositiveTarget);
  // X and Y of opposite sign lie outside the image of the positive forms
  EXPECT_THROW(poisson_solve(std::vector<double>{48, -32}, Symmetry::Sp2Sp1), NotPositiveTarget);
}

TEST(Poisson, Sp2U1UnreachableTargetDiverges) {
  PoissonOptions opt;
  opt.max_iterations = 20;
  // X < 0 < Y together with a tiny quaternionic part: far outside the locus image
  EXPECT_THROW(poisson_solve(std::vector<double>{-1, 1e6, 0, 0}, Symmetry::Sp2U1, std::nullopt, opt),
               Error);
}

TEST(Sp2Sp1Ratio, StrictlyIncreasing) {
  double prev = sp2sp1_ratio(1e-6);
  for (double t = 1e-3; t < 1e3; t *= 1.1) {
    const double r = sp2sp1_ratio(t);
    EXPECT_GT(r, prev);
    prev = r;
  }
  EXPECT_DOUBLE_EQ(sp2sp1_ratio(5), 5);
  EXPECT_DOUBLE_EQ(sp2sp1_ratio(1), 2.0 / 3.0);
}

TEST(FixedPoints, SpinSeven) {
  const auto set = fixed_points(Symmetry::Spin7, 0);
  ASSERT_EQ(set.points.size(), 2u);
  for (const auto& r : set.points) {
    EXPECT_NEAR(std::abs(r.point.A), 4, 1e-12);
    EXPECT_EQ(r.kind, EigenformKind::NearlyParallel);
  }
}

TEST(FixedPoints, Sp2Sp1TwoPoints) {
  const auto set = fixed_points(Symmetry::Sp2Sp1, 0);
  ASSERT_EQ(set.points.size(), 2u);
  for (const auto& r : set.points) {
    EXPECT_LT(r.residual, 1e-10);
    EXPECT_NEAR(std::pow(r.point.B / r.point.A, 3), 5, 1e-9);
    EXPECT_EQ(r.kind, EigenformKind::NearlyParallel);
  }
  EXPECT_LT(set.points[0].point.A * set.points[1].point.A, 0);
}

TEST(FixedPoints, SU4Circles) {
  const auto set = fixed_points(Symmetry::SU4, 0);
  ASSERT_EQ(set.circles.size(), 2u);
  for (const auto& c : set.circles) {
    EXPECT_NEAR(c.R, 4, 1e-12);
    EXPECT_NEAR(std::abs(c.A), 4 * std::cbrt(3.0), 1e-12);
    for (const auto& p : sample_circle(c, 16)) {
      const auto r = eigenform_classify(p);
      EXPECT_EQ(r.kind, EigenformKind::NearlyParallel);
      EXPECT_NEAR(r.lambda, 1, 1e-10);
      EXPECT_LT(r.residual, 1e-10);
    }
  }
}

TEST(FixedPoints, Sp2U1DiscreteSet) {
  const auto set = fixed_points(Symmetry::Sp2U1, 16);
  EXPECT_EQ(set.stated_count, 8u);
  EXPECT_EQ(set.points.size(), 4u);
  EXPECT_EQ(set.preserved_lines, 2u);
  for (const auto& r : set.points) {
    EXPECT_EQ(r.kind, EigenformKind::NearlyParallel);
    EXPECT_LT(r.residual, 1e-10);
    EXPECT_NEAR(r.lambda, 1, 1e-10);
  }
  EXPECT_EQ(set.curve.size(), 16u);
  for (const auto& c : set.curve) EXPECT_LT(c.curve_residual, 1e-9);
}

TEST(Eigenform, Errors) {
  EXPECT_THROW(eigenform_classify(make_point(Symmetry::Sp2U1, std::vector<double>{1, 1, 1, 1})), NotCoclosed);
  EXPECT_THROW(eigenform_classify(make_point(Symmetry::SU4, std::vector<double>{1, 1, 0})), NotEigenform);
  EXPECT_THROW(eigenform_classify(make_point(Symmetry::SU4, std::vector<double>{1, -1, 0})), NotPositive);
}

TEST(Eigenform, SyntheticEigenvectors) {
  // D = diag(1, -1, 2): e1 is an eigenvector, e1 + e2 only of D^2
  const auto D = matrix3({{1, 0, 0}, {0, -1, 0}, {0, 0, 2}});
  EXPECT_EQ(classify_eigenvector(D, std::vector<double>{1, 0, 0}), EigenformKind::NearlyParallel);
  EXPECT_EQ(classify_eigenvector(D, std::vector<double>{1, 1, 0}), EigenformKind::CoclosedOnly);
  EXPECT_EQ(classify_eigenvector(D, std::vector<double>{1, 0, 1}), std::nullopt);
}

TEST(Eigenform, TraceCriterion) {
  // tr = 2 is an eigenvalue of diag(1, -1, 2)
  EXPECT_NEAR(trace_criterion(matrix3({{1, 0, 0}, {0, -1, 0}, {0, 0, 2}})), 0, 1e-14);
  EXPECT_NEAR(trace_criterion(matrix3({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}})), -8, 1e-14);
}

TEST(Eigenform, TraceLocusEigenvaluesOfTheSixthPowerMatrix) {
  // S = diag(A^6, B^6, R'^6) N with R'^6 on the trace locus; D^2 eigenvalues 4B^12 and 48A^12B^6/(4A^6-B^6)
  for (const auto& [A, B] : {std::pair{1.0, 1.0}, std::pair{1.1, 0.8}, std::pair{0.9, 1.2}}) {
    const double a = std::pow(A, 6), b = std::pow(B, 6), r = a * b / (4 * a - b);
    const double N[3][3] = {{0, -4, -8}, {-2, 2, -4}, {-2, -2, 0}};
    const double d[3] = {a, b, r};
    DenseMatrix<double> S(3, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) S(i, j) = d[i] * N[i][j];
    EXPECT_NEAR(trace_criterion(S) / (a * b * b), 0, 1e-9);
    const auto S2 = S * S;
    auto check = [&](std::array<double, 3> v, double lambda) {
      for (int i = 0; i < 3; ++i) {
        double s = 0;
        for (int j = 0; j < 3; ++j) s += S2(i, j) * v[j];
        EXPECT_NEAR(s, lambda * v[i], 1e-9 * std::abs(lambda));
      }
    };
    check({-2, (b - 2 * a) / a, 1}, 4 * b * b);
    check({(8 * a - 2 * b) / b, 0, 1}, 48 * a * a * b / (4 * a - b));
  }
}

TEST(FamilyCurve, SolvesTheImplicitEquation) {
  for (double B : {0.8, 1.0, 1.3}) {
    const auto A = family_curve_solve(B);
    ASSERT_TRUE(A);
    EXPECT_NEAR(family_curve(*A, B), 0, 1e-10);
    EXPECT_GT(4 * std::pow(*A, 6), std::pow(B, 6));
  }
  const auto A1 = family_curve_solve(1.0);
  EXPECT_NEAR(6 * std::pow(*A1, 6), *A1 + 1, 1e-10);
}
