#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "g2lap/experiments.hpp"
#include "g2lap/laplace.hpp"

using namespace g2lap;

namespace {

std::size_t count_lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST(RayImage, CsvShape) {
  RayImageOptions opt;
  opt.rays = 1;
  opt.steps = 1;
  opt.alphas = {0.0};
  opt.threads = 1;
  const auto records = ray_image(opt);
  ASSERT_EQ(records.size(), 1u);
  std::ostringstream os;
  write_ray_csv(os, records);
  EXPECT_EQ(count_lines(os.str()), 2u);
  EXPECT_EQ(os.str().substr(0, os.str().find('\n')),
            "ray,step,theta,s,A,B,R,alpha,X,Y,Qcos,Qsin,nX,nY,nQcos,nQsin,positive_image");
  EXPECT_NEAR(records[0].theta, std::numbers::pi / 4, 1e-15);
}

TEST(RayImage, RecordsMatchClosedForm) {
  RayImageOptions opt;
  opt.rays = 3;
  opt.steps = 5;
  opt.threads = 2;
  const auto records = ray_image(opt);
  ASSERT_EQ(records.size(), 2u * 3u * 5u);
  for (const auto& r : records) {
    EXPECT_EQ(r.input[0], opt.plane_a);
    const auto p = make_point(Symmetry::Sp2U1, std::vector<double>{r.input[0], r.input[1], r.input[2], r.input[3]});
    const auto img = closed_form_laplacian(p);
    for (int i = 0; i < 4; ++i) EXPECT_NEAR(r.output[i], img[i], 1e-12 * std::abs(img[0]) + 1e-12);
    EXPECT_EQ(r.positive_image, r.output[0] * r.output[1] > 0);
  }
}

TEST(RayImage, LargeBLeavesThePositiveForms) {
  RayImageOptions opt;
  opt.rays = 4;
  opt.steps = 40;
  opt.s_max = 20;
  opt.threads = 1;
  bool found = false;
  for (const auto& r : ray_image(opt))
    if (r.input[1] > 5 && !r.positive_image) found = true;
  EXPECT_TRUE(found);
}

TEST(RayImage, ThreadCountDoesNotChangeOutput) {
  RayImageOptions opt;
  opt.rays = 6;
  opt.steps = 20;
  opt.threads = 1;
  std::ostringstream a, b;
  write_ray_csv(a, ray_image(opt));
  opt.threads = 4;
  write_ray_csv(b, ray_image(opt));
  EXPECT_EQ(a.str(), b.str());
}

TEST(RayImage, CrossingsArePolished) {
  RayImageOptions opt;
  opt.rays = 8;
  opt.steps = 80;
  const auto records = ray_image(opt);
  const auto crossings = find_crossings(records, opt);
  ASSERT_FALSE(crossings.empty());
  std::size_t polished = 0;
  for (const auto& c : crossings) {
    EXPECT_NE(c.ray1, c.ray2);
    if (c.polished) {
      ++polished;
      EXPECT_LT(c.polished_gap, 1e-10);
      // two distinct inputs with the same normalized image
      const auto p1 = make_point(Symmetry::Sp2U1, std::vector<double>(c.input1.begin(), c.input1.end()));
      const auto p2 = make_point(Symmetry::Sp2U1, std::vector<double>(c.input2.begin(), c.input2.end()));
      const auto i1 = closed_form_laplacian(p1), i2 = closed_form_laplacian(p2);
      EXPECT_NEAR(i1[1] / i1[0], i2[1] / i2[0], 1e-8 * (1 + std::abs(i1[1] / i1[0])));
      EXPECT_NEAR(i1[2] / i1[0], i2[2] / i2[0], 1e-8 * (1 + std::abs(i1[2] / i1[0])));
    }
  }
  EXPECT_GT(polished, 0u);
}

TEST(Cloud, DeterministicAcrossThreadCounts) {
  CloudOptions opt;
  opt.samples = 500;
  opt.seed = 7;
  opt.threads = 1;
  std::ostringstream a, b, c;
  write_cloud_csv(a, point_cloud(opt));
  opt.threads = 3;
  write_cloud_csv(b, point_cloud(opt));
  opt.seed = 8;
  write_cloud_csv(c, point_cloud(opt));
  EXPECT_EQ(a.str(), b.str());
  EXPECT_NE(a.str(), c.str());
}

TEST(Cloud, RecordsAndStatistics) {
  CloudOptions opt;
  opt.samples = 2000;
  const auto cloud = point_cloud(opt);
  ASSERT_EQ(cloud.records.size(), 2000u);
  EXPECT_EQ(cloud.stats.samples, 2000u);
  EXPECT_EQ(cloud.stats.upper + cloud.stats.lower, 2000u);
  for (const auto& r : cloud.records) {
    EXPECT_GT(r.input[0] * r.input[1], 0);
    EXPECT_GT(r.input[2], 0);
    double n = 0;
    for (double x : r.projective_output) n += x * x;
    EXPECT_NEAR(n, 1, 1e-12);
    EXPECT_EQ(r.half == Half::Upper, r.output[0] * r.output[1] > 0);
  }
  EXPECT_GE(cloud.stats.lower_negative_x_fraction, 0);
  EXPECT_LE(cloud.stats.lower_negative_x_fraction, 1);
  EXPECT_LE(cloud.stats.small_b_positive_x, cloud.stats.small_b);
}

TEST(Cloud, SmallBImagesArePositive) {
  // X ~ 16 A^7 B^-4 R^-2 dominates as B -> 0
  CloudOptions opt;
  opt.samples = 400;
  opt.region.a_min = 0.5;
  opt.region.a_max = 2;
  opt.region.b_min = 1e-3;
  opt.region.b_max = 2e-3;
  opt.region.r_max = 2;
  const auto cloud = point_cloud(opt);
  for (const auto& r : cloud.records)
    if (r.input[2] > 0.1) EXPECT_GT(r.output[0], 0);
}

TEST(Cloud, JsonIsWellFormed) {
  CloudOptions opt;
  opt.samples = 3;
  std::ostringstream os;
  write_cloud_json(os, point_cloud(opt));
  const std::string s = os.str();
  EXPECT_NE(s.find("\"stats\""), std::string::npos);
  EXPECT_NE(s.find("\"records\""), std::string::npos);
}

TEST(Witness, NonPositiveImageFromPositiveInput) {
  const auto w = non_positivity_witness();
  EXPECT_GT(w.b_star, 1);
  EXPECT_LT(w.image_at_b_star[0] * w.image_at_b_star[1], 0);
  EXPECT_GT(w.b_degenerate, 1);
  EXPECT_LE(w.b_degenerate, w.b_star);
  EXPECT_EQ(w.classification, SignatureClass::Degenerate);
  const auto p = make_point(Symmetry::Sp2U1, std::vector<double>{1, w.b_star, 1, 0});
  EXPECT_TRUE(is_positive(p));
}
