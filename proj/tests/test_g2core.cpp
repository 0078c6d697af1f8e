#include <gtest/gtest.h>

#include "g2lap/g2core.hpp"
#include "g2lap/homog.hpp"
#include "g2lap/laplace.hpp"
#include "support.hpp"

using namespace g2lap;
using testing_support::Sampler;
using testing_support::to_oracle;

namespace {

using RForm = KForm<Rational>;
using Q = Rational;

RForm e(std::initializer_list<int> idx) { return RForm::basis(idx); }

RForm phi0() {
  return e({1, 2, 3}) + e({1, 4, 5}) + e({1, 6, 7}) + e({2, 4, 6}) - e({2, 5, 7}) - e({3, 4, 7}) - e({3, 5, 6});
}

/// Block metric with square coefficients so that the volume stays rational.
std::pair<DiagonalMetric<Q>, oracle::Metric> random_metric(Sampler& s, const BlockStructure& blocks) {
  DiagonalMetric<Q> g = unit_metric<Q>(blocks);
  oracle::Metric o;
  Q vol = 1;
  for (std::size_t b = 0; b < blocks.count(); ++b) {
    const Q q = s.positive();
    g.block_coeffs[b] = q * q;
    for (int i = blocks[b].first; i <= blocks[b].last; ++i) {
      o.c[static_cast<std::size_t>(i - 1)] = q * q;
      vol *= q;
    }
  }
  if (s.integer(0, 1)) {
    g.orientation = -1;
    vol = -vol;
  }
  g.volume = vol;
  o.vol = vol;
  return {g, o};
}

}  // namespace

TEST(InducedBilinear, StandardFormIsRound) {
  const auto r = induced_bilinear(phi0(), BlockStructure::whole());
  ASSERT_EQ(r.classification, SignatureClass::Positive);
  ASSERT_TRUE(r.metric);
  EXPECT_EQ(r.metric->block_coeffs[0], 1);
  EXPECT_EQ(r.metric->volume, 1);
  EXPECT_EQ(r.metric->orientation, 1);
}

TEST(InducedBilinear, SU4UnitPointIsStandardForm) {
  const auto& sp = preset(Symmetry::SU4);
  ParamPoint<Q> p;
  p.symmetry = Symmetry::SU4;
  EXPECT_EQ(to_form(p), phi0());
  const auto g = metric_of(to_form(p), sp.blocks);
  EXPECT_EQ(g.block_coeffs, (std::vector<Q>{1, 1}));
}

TEST(InducedBilinear, SU4GeneralMetric) {
  Sampler s(21);
  const auto& sp = preset(Symmetry::SU4);
  for (int trial = 0; trial < 20; ++trial) {
    const auto p = s.exact_point(Symmetry::SU4);
    const auto g = metric_of(to_form(p), sp.blocks);
    EXPECT_EQ(g.block_coeffs[0], Q(ipow(p.A, 6) * ipow(p.R, -4)));
    EXPECT_EQ(g.block_coeffs[1], Q(p.R * p.R));
    EXPECT_EQ(g.volume, Q(ipow(p.A, 3) * ipow(p.R, 4)));
    EXPECT_EQ(g.orientation, sgn(p.A));
  }
}

TEST(InducedBilinear, MatchesBruteForceOracle) {
  Sampler s(22);
  for (Symmetry sym : {Symmetry::SU4, Symmetry::Sp2Sp1, Symmetry::Sp2U1}) {
    for (int trial = 0; trial < 6; ++trial) {
      const auto phi = to_form(s.exact_point(sym));
      const auto b = bilinear_matrix(phi);
      const auto o = oracle::bilinear(to_oracle(phi));
      for (int i = 0; i < 7; ++i)
        for (int j = 0; j < 7; ++j) EXPECT_EQ(b[i][j], o[i][j]) << symmetry_name(sym) << ' ' << i << ' ' << j;
      const auto g = metric_of(phi, preset(sym).blocks);
      const auto og = oracle::metric_of(to_oracle(phi));
      for (int i = 1; i <= 7; ++i) EXPECT_EQ(g.coefficient_at(i, preset(sym).blocks), og.c[i - 1]);
      EXPECT_EQ(g.volume, og.vol);
    }
  }
}

TEST(InducedBilinear, BlockDiagonalOnEveryPreset) {
  Sampler s(23);
  for (Symmetry sym : kAllSymmetries) {
    const auto& sp = preset(sym);
    for (int trial = 0; trial < 20; ++trial) {
      const auto phi = to_form(s.exact_point(sym));
      const auto b = bilinear_matrix(phi);
      for (int i = 0; i < 7; ++i)
        for (int j = 0; j < 7; ++j)
          if (i != j) EXPECT_EQ(sgn(b[i][j]), 0);
      EXPECT_EQ(induced_bilinear(phi, sp.blocks).classification, SignatureClass::Positive);
    }
  }
}

TEST(InducedBilinear, DegenerateAndIndefinite) {
  const auto deg = induced_bilinear(e({1, 2, 3}), BlockStructure::whole());
  EXPECT_EQ(deg.classification, SignatureClass::Degenerate);
  EXPECT_FALSE(deg.metric);
  EXPECT_THROW(metric_of(e({1, 2, 3}), BlockStructure::whole()), DegenerateForm);

  ParamPoint<Q> p;
  p.symmetry = Symmetry::Sp2U1;
  p.B = -1;
  const auto& sp = preset(Symmetry::Sp2U1);
  const auto ind = induced_bilinear(to_form(p), sp.blocks);
  EXPECT_EQ(ind.classification, SignatureClass::Indefinite34);
  ASSERT_TRUE(ind.metric);
  int positive = 0;
  for (int i = 1; i <= 7; ++i) positive += sgn(ind.metric->coefficient_at(i, sp.blocks)) > 0;
  EXPECT_EQ(positive, 3);
  EXPECT_THROW(metric_of(to_form(p), sp.blocks), NotPositive);
}

TEST(InducedBilinear, OffDiagonalFormIsRejected) {
  EXPECT_THROW(induced_bilinear(RForm(phi0() + e({1, 2, 4})), BlockStructure::whole()), NonDiagonalError);
}

TEST(InducedBilinear, FloatDegeneracyThreshold) {
  auto p = make_point(Symmetry::Sp2U1, std::vector<double>{1.0, 1.0, 1.0, 0.0});
  p.B = 1e-5;  // b_11 ~ B^6 = 1e-30 against O(1) entries
  EXPECT_EQ(induced_bilinear(to_form(p), preset(Symmetry::Sp2U1).blocks).classification,
            SignatureClass::Degenerate);
  p.B = 0.1;
  EXPECT_EQ(induced_bilinear(to_form(p), preset(Symmetry::Sp2U1).blocks).classification,
            SignatureClass::Positive);
}

TEST(HodgeStar, UnitMetricComplement) {
  const auto g = unit_metric<Q>(BlockStructure::whole());
  EXPECT_EQ(hodge_star(e({1, 2, 3}), g, BlockStructure::whole()), e({4, 5, 6, 7}));
  EXPECT_EQ(hodge_star(RForm::constant(Q(1)), g, BlockStructure::whole()), e({1, 2, 3, 4, 5, 6, 7}));
}

TEST(HodgeStar, MatchesDefinitionOracle) {
  Sampler s(24);
  for (Symmetry sym : {Symmetry::SU4, Symmetry::Sp2U1}) {
    const auto& blocks = preset(sym).blocks;
    for (int trial = 0; trial < 8; ++trial) {
      const auto [g, og] = random_metric(s, blocks);
      for (int k = 0; k <= 7; ++k) {
        RForm a(k);
        for (const auto& t : oracle::tuples(k))
          if (s.integer(0, 3) == 0) a += RForm(testing_support::from_oracle(oracle::basis(t)) * s.nonzero());
        EXPECT_EQ(to_oracle(hodge_star(a, g, blocks)), oracle::star(to_oracle(a), og));
      }
    }
  }
}

TEST(HodgeStar, InvolutionAndPositivity) {
  Sampler s(25);
  for (Symmetry sym : {Symmetry::SU4, Symmetry::Sp2Sp1, Symmetry::Sp2U1}) {
    const auto& sp = preset(sym);
    for (int trial = 0; trial < 10; ++trial) {
      const auto [g, og] = random_metric(s, sp.blocks);
      (void)og;
      for (int k = 0; k <= 7; ++k) {
        RForm a(k);
        for (const auto& t : oracle::tuples(k))
          if (s.integer(0, 2) == 0) a += RForm(testing_support::from_oracle(oracle::basis(t)) * s.nonzero());
        EXPECT_EQ(hodge_star(hodge_star(a, g, sp.blocks), g, sp.blocks), a);
      }
      // g(a, a) vol = a ^ *a for invariant forms
      RForm a(3);
      for (const auto& b : sp.basis3) a += RForm(b * s.nonzero());
      const Q top = top_coefficient(wedge(a, hodge_star(a, g, sp.blocks)));
      EXPECT_EQ(top, Q(form_inner(a, a, g, sp.blocks) * g.volume));
      EXPECT_GT(sgn(form_inner(a, a, g, sp.blocks)), 0);
    }
  }
}

TEST(HodgeStar, PrintedCoefficients) {
  const auto& su4 = preset(Symmetry::SU4);
  ParamPoint<Q> p;
  p.symmetry = Symmetry::SU4;
  p.A = 2;
  p.R = Q(3, 2);
  const auto g = metric_of(to_form(p), su4.blocks);
  EXPECT_EQ(hodge_star(su4.basis3[0], g, su4.blocks), RForm(su4.basis4[0] * Q(ipow(p.A, -3) * ipow(p.R, 4))));

  const auto& sp = preset(Symmetry::Sp2U1);
  ParamPoint<Q> q;
  q.symmetry = Symmetry::Sp2U1;
  q.A = Q(1, 2);
  q.B = Q(2, 3);
  q.R = Q(3, 2);
  const auto h = metric_of(to_form(q), sp.blocks);
  EXPECT_EQ(hodge_star(sp.basis3[2], h, sp.blocks), RForm(sp.basis4[2] * Q(q.A * q.B * q.B / (q.R * q.R))));
}

TEST(Scaling, MetricScalesByTwoThirdsPower) {
  const auto& sp = preset(Symmetry::SU4);
  auto [g1, g8] = scaling_check(phi0(), Q(8), BlockStructure::whole());
  EXPECT_EQ(g8.block_coeffs[0], Q(4) * g1.block_coeffs[0]);
  EXPECT_EQ(g8.volume, Q(128) * g1.volume);
  auto [h1, h1b] = scaling_check(phi0(), Q(1), BlockStructure::whole());
  EXPECT_EQ(h1.block_coeffs, h1b.block_coeffs);

  ParamPoint<Q> p;
  p.symmetry = Symmetry::SU4;
  auto [m, mneg] = scaling_check(to_form(p), Q(-1), sp.blocks);
  EXPECT_EQ(m.block_coeffs, mneg.block_coeffs);
  EXPECT_EQ(mneg.orientation, -m.orientation);
  const auto direct = metric_of(RForm(-to_form(p)), sp.blocks);
  EXPECT_EQ(direct.block_coeffs, mneg.block_coeffs);
  EXPECT_EQ(direct.volume, mneg.volume);
}

TEST(Scaling, RandomPresetPoints) {
  Sampler s(26);
  for (Symmetry sym : kAllSymmetries) {
    const auto& sp = preset(sym);
    for (int trial = 0; trial < 10; ++trial) {
      const auto phi = to_form(s.exact_point(sym));
      for (const auto& [c, c23] : {std::pair{Q(8), Q(4)}, std::pair{Q(27), Q(9)}, std::pair{Q(-8), Q(4)}}) {
        auto [g, gc] = scaling_check(phi, c, sp.blocks);
        for (std::size_t b = 0; b < g.block_coeffs.size(); ++b) EXPECT_EQ(gc.block_coeffs[b], c23 * g.block_coeffs[b]);
        EXPECT_EQ(gc.orientation, sgn(c) * g.orientation);
      }
    }
  }
}
