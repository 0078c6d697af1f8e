#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "g2lap/g2core.hpp"
#include "g2lap/homog.hpp"

namespace g2lap {

// Sp2U1 experiments on the image of the G2-Laplacian.

struct RayImageOptions {
  double plane_a = 1.0;
  std::vector<double> alphas{0.0, 3.141592653589793};  // each must be 0 or pi
  std::size_t rays = 24;                                 // rays per alpha
  std::size_t steps = 200;                               // samples per ray
  double s_min = 0.05;
  double s_max = 3.0;
  unsigned threads = 0;  // 0 = hardware concurrency
};

struct RayImageRecord {
  std::size_t ray = 0;   // global polyline index
  std::size_t step = 0;
  double theta = 0.0;    // direction in the (B, R) quadrant
  double s = 0.0;        // distance from the origin of the plane
  std::array<double, 4> input{};   // (A, B, R, alpha)
  std::array<double, 4> output{};  // (X, Y, Qcos, Qsin)
  std::array<double, 4> normalized{};
  bool positive_image = false;
};

/// Rays (a, s cos theta, s sin theta) at fixed alpha, theta_n = (n+1)/(N+1) pi/2.
std::vector<RayImageRecord> ray_image(const RayImageOptions& opt);
void write_ray_csv(std::ostream& os, const std::vector<RayImageRecord>& records);

struct RayCrossing {
  std::size_t ray1 = 0, ray2 = 0;
  std::array<double, 4> input1{}, input2{};
  std::array<double, 2> image{};  // (Y/X, Qcos/X) after polishing
  double gap = 0.0;               // image distance at the segment crossing
  double polished_gap = 0.0;      // after Newton on (s1, s2)
  bool polished = false;
};

/// Segment crossings between normalized ray images (split where X changes sign),
/// each polished by Newton in the two ray parameters. Images with coordinates
/// beyond `clip` are ignored.
std::vector<RayCrossing> find_crossings(const std::vector<RayImageRecord>& records, const RayImageOptions& opt,
                                        double tolerance = 1e-6, double clip = 1e3);

struct CloudRegion {
  double a_min = -3, a_max = 3;
  double b_min = -3, b_max = 3;
  double r_max = 3;  // R in (0, r_max]
  double alpha_min = 0, alpha_max = 6.283185307179586;
};

struct CloudOptions {
  std::size_t samples = 10000;
  std::uint64_t seed = 1;
  CloudRegion region;
  double small_b = 0.1;  // |B| <= small_b * min(|A|, R) counts as small
  unsigned threads = 0;
};

enum class Half { Upper, Lower };
const char* to_string(Half h);

struct CloudRecord {
  std::size_t index = 0;
  std::array<double, 4> input{};  // (A, B, R, alpha)
  std::array<double, 4> output{};
  std::array<double, 4> projective_output{};  // unit norm, signed by the input orientation
  Half half = Half::Upper;                     // Upper iff the image is a positive form (X Y > 0)
};

struct CloudStats {
  std::size_t samples = 0;
  std::size_t rejected = 0;  // draws with A B <= 0
  std::size_t upper = 0;
  std::size_t lower = 0;
  double lower_negative_x_fraction = 0.0;  // one-sidedness of the lower cone
  std::size_t small_b = 0;
  std::size_t small_b_positive_x = 0;
};

struct Cloud {
  std::vector<CloudRecord> records;
  CloudStats stats;
};

Cloud point_cloud(const CloudOptions& opt);
void write_cloud_csv(std::ostream& os, const Cloud& cloud);
void write_cloud_json(std::ostream& os, const Cloud& cloud);

struct NonPositivityWitness {
  double b_star = 0.0;                 // first scanned B with sign X != sign Y
  std::array<double, 4> image_at_b_star{};
  double b_degenerate = 0.0;           // bisected zero of the coordinate that changed sign
  std::array<double, 4> image_at_degenerate{};
  SignatureClass classification = SignatureClass::Positive;
  int scan_steps = 0;
  int bisection_steps = 0;
};

/// Scans B upward from 1 at fixed (A, R, alpha) and bisects the sign change.
NonPositivityWitness non_positivity_witness(double A = 1.0, double R = 1.0, double alpha = 0.0);

}  // namespace g2lap
