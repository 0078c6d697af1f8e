#include "g2lap/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <ostream>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>

#include <json.hpp>

#include "g2lap/dual.hpp"
#include "g2lap/laplace.hpp"

namespace g2lap {

namespace {

void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& body) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(n / 64, 1)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&, t] {
      for (std::size_t i = t; i < n; i += threads) body(i);
    });
  for (auto& th : pool) th.join();
}

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x + 0.0);  // no "-0"
  return buf;
}

std::array<double, 4> sp2u1_image(double A, double B, double R, double c, double s) {
  const auto m = closed_form_map<double>(Symmetry::Sp2U1, A, B, R, c, s);
  return {m[0], m[1], m[2], m[3]};
}

double alpha_cos(double alpha) {
  if (std::abs(alpha) < 1e-12) return 1.0;
  if (std::abs(alpha - std::numbers::pi) < 1e-12) return -1.0;
  throw std::invalid_argument("ray images live on the alpha in {0, pi} plane");
}

struct RayGeometry {
  double a, theta, c;
};

std::array<double, 4> ray_input(const RayGeometry& g, double s) {
  return {g.a, s * std::cos(g.theta), s * std::sin(g.theta), g.c > 0 ? 0.0 : std::numbers::pi};
}

/// (Y/X, Qcos/X) along a ray, with derivative in s.
std::array<Dual<double>, 2> ray_normalized(const RayGeometry& g, double s) {
  using D = Dual<double>;
  const D A(g.a, 0.0), B(s * std::cos(g.theta), std::cos(g.theta)), R(s * std::sin(g.theta), std::sin(g.theta));
  const auto m = closed_form_map<D>(Symmetry::Sp2U1, A, B, R, D(g.c, 0.0), D(0.0, 0.0));
  return {m[1] / m[0], m[2] / m[0]};
}

struct Segment {
  std::size_t ray;
  std::size_t step;  // first endpoint
  std::array<double, 2> p, q;
};

double cross2(const std::array<double, 2>& a, const std::array<double, 2>& b) { return a[0] * b[1] - a[1] * b[0]; }

std::array<double, 2> sub(const std::array<double, 2>& a, const std::array<double, 2>& b) {
  return {a[0] - b[0], a[1] - b[1]};
}

/// Closest parameters (t, u) on two segments and their distance.
std::array<double, 3> segment_distance(const Segment& a, const Segment& b) {
  const auto d1 = sub(a.q, a.p), d2 = sub(b.q, b.p), w = sub(b.p, a.p);
  const double den = cross2(d1, d2);
  if (den != 0) {
    const double t = cross2(w, d2) / den, u = cross2(w, d1) / den;
    if (t >= 0 && t <= 1 && u >= 0 && u <= 1) return {t, u, 0.0};
  }
  auto project = [](const std::array<double, 2>& x, const std::array<double, 2>& p, const std::array<double, 2>& d) {
    const double len2 = d[0] * d[0] + d[1] * d[1];
    double t = len2 > 0 ? ((x[0] - p[0]) * d[0] + (x[1] - p[1]) * d[1]) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return std::array<double, 2>{t, std::hypot(p[0] + t * d[0] - x[0], p[1] + t * d[1] - x[1])};
  };
  std::array<double, 3> best{0, 0, INFINITY};
  for (int e = 0; e < 2; ++e) {
    const auto& x = e == 0 ? b.p : b.q;
    const auto pr = project(x, a.p, d1);
    if (pr[1] < best[2]) best = {pr[0], static_cast<double>(e), pr[1]};
    const auto& y = e == 0 ? a.p : a.q;
    const auto qr = project(y, b.p, d2);
    if (qr[1] < best[2]) best = {static_cast<double>(e), qr[0], qr[1]};
  }
  return best;
}

}  // namespace

std::vector<RayImageRecord> ray_image(const RayImageOptions& opt) {
  if (opt.rays == 0 || opt.steps == 0) throw std::invalid_argument("rays and steps must be at least 1");
  if (!(opt.s_min > 0 && opt.s_max >= opt.s_min)) throw std::invalid_argument("ray parameter range must be positive");
  if (opt.plane_a == 0) throw std::invalid_argument("the A = 0 plane contains no positive forms");
  const std::size_t per_alpha = opt.rays * opt.steps;
  std::vector<RayImageRecord> out(opt.alphas.size() * per_alpha);
  std::vector<double> cosines;
  for (double a : opt.alphas) cosines.push_back(alpha_cos(a));
  parallel_for(out.size(), opt.threads, [&](std::size_t idx) {
    const std::size_t k = idx / per_alpha, n = (idx % per_alpha) / opt.steps, m = idx % opt.steps;
    const RayGeometry g{opt.plane_a, static_cast<double>(n + 1) / static_cast<double>(opt.rays + 1) * std::numbers::pi / 2,
                        cosines[k]};
    const double s = opt.steps == 1 ? opt.s_min
                                    : opt.s_min + (opt.s_max - opt.s_min) * static_cast<double>(m) /
                                                      static_cast<double>(opt.steps - 1);
    RayImageRecord& r = out[idx];
    r.ray = k * opt.rays + n;
    r.step = m;
    r.theta = g.theta;
    r.s = s;
    r.input = ray_input(g, s);
    r.output = sp2u1_image(r.input[0], r.input[1], r.input[2], g.c, 0.0);
    r.normalized = r.output;
    if (r.output[0] != 0)
      for (double& x : r.normalized) x /= r.output[0];
    r.positive_image = r.output[0] * r.output[1] > 0;
  });
  return out;
}

void write_ray_csv(std::ostream& os, const std::vector<RayImageRecord>& records) {
  os << "ray,step,theta,s,A,B,R,alpha,X,Y,Qcos,Qsin,nX,nY,nQcos,nQsin,positive_image\n";
  for (const auto& r : records) {
    os << r.ray << ',' << r.step << ',' << num(r.theta) << ',' << num(r.s);
    for (double x : r.input) os << ',' << num(x);
    for (double x : r.output) os << ',' << num(x);
    for (double x : r.normalized) os << ',' << num(x);
    os << ',' << (r.positive_image ? "true" : "false") << '\n';
  }
}

std::vector<RayCrossing> find_crossings(const std::vector<RayImageRecord>& records, const RayImageOptions& opt,
                                        double tolerance, double clip) {
  std::vector<Segment> segs;
  std::vector<RayGeometry> geom;
  std::vector<double> svals;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    if (r.ray >= geom.size()) geom.resize(r.ray + 1);
    geom[r.ray] = {r.input[0], r.theta, r.input[3] == 0.0 ? 1.0 : -1.0};
    if (i + 1 >= records.size()) continue;
    const auto& n = records[i + 1];
    if (n.ray != r.ray || n.step != r.step + 1) continue;
    if (r.output[0] == 0 || n.output[0] == 0 || (r.output[0] > 0) != (n.output[0] > 0)) continue;
    const std::array<double, 2> p{r.normalized[1], r.normalized[2]}, q{n.normalized[1], n.normalized[2]};
    if (std::max({std::abs(p[0]), std::abs(p[1]), std::abs(q[0]), std::abs(q[1])}) > clip) continue;
    segs.push_back({r.ray, r.step, p, q});
  }
  auto s_at = [&](std::size_t step) {
    return opt.steps == 1 ? opt.s_min
                          : opt.s_min + (opt.s_max - opt.s_min) * static_cast<double>(step) /
                                            static_cast<double>(opt.steps - 1);
  };

  std::vector<RayCrossing> out;
  for (std::size_t i = 0; i < segs.size(); ++i) {
    const auto& a = segs[i];
    const double ax0 = std::min(a.p[0], a.q[0]) - tolerance, ax1 = std::max(a.p[0], a.q[0]) + tolerance;
    const double ay0 = std::min(a.p[1], a.q[1]) - tolerance, ay1 = std::max(a.p[1], a.q[1]) + tolerance;
    for (std::size_t j = i + 1; j < segs.size(); ++j) {
      const auto& b = segs[j];
      if (b.ray == a.ray) continue;
      if (std::max(b.p[0], b.q[0]) < ax0 || std::min(b.p[0], b.q[0]) > ax1 || std::max(b.p[1], b.q[1]) < ay0 ||
          std::min(b.p[1], b.q[1]) > ay1)
        continue;
      const auto [t, u, gap] = segment_distance(a, b);
      if (gap > tolerance) continue;
      const RayGeometry& g1 = geom[a.ray];
      const RayGeometry& g2 = geom[b.ray];
      const double h1 = s_at(a.step + 1) - s_at(a.step), h2 = s_at(b.step + 1) - s_at(b.step);
      double s1 = s_at(a.step) + t * h1;
      double s2 = s_at(b.step) + u * h2;
      const double s1_start = s1, s2_start = s2;
      auto residual = [&](double x1, double x2) {
        const auto n1 = ray_normalized(g1, x1), n2 = ray_normalized(g2, x2);
        return std::array<double, 2>{n1[0].v - n2[0].v, n1[1].v - n2[1].v};
      };
      auto f = residual(s1, s2);
      double fn = std::hypot(f[0], f[1]);
      for (int it = 0; it < 60 && fn > 0; ++it) {
        const auto n1 = ray_normalized(g1, s1), n2 = ray_normalized(g2, s2);
        const double j00 = n1[0].d, j01 = -n2[0].d, j10 = n1[1].d, j11 = -n2[1].d;
        const double det = j00 * j11 - j01 * j10;
        if (det == 0 || !std::isfinite(det)) break;
        const double d1 = (j11 * f[0] - j01 * f[1]) / det, d2 = (-j10 * f[0] + j00 * f[1]) / det;
        double h = 1.0;
        bool moved = false;
        for (int k = 0; k < 30; ++k, h *= 0.5) {
          const double c1 = s1 - h * d1, c2 = s2 - h * d2;
          if (c1 <= 0 || c2 <= 0) continue;
          const auto fc = residual(c1, c2);
          const double cn = std::hypot(fc[0], fc[1]);
          if (cn < fn) {
            s1 = c1;
            s2 = c2;
            f = fc;
            fn = cn;
            moved = true;
            break;
          }
        }
        if (!moved) break;
      }
      RayCrossing c;
      c.ray1 = a.ray;
      c.ray2 = b.ray;
      c.input1 = ray_input(g1, s1);
      c.input2 = ray_input(g2, s2);
      const auto n1 = ray_normalized(g1, s1);
      c.image = {n1[0].v, n1[1].v};
      c.gap = gap;
      c.polished_gap = fn;
      const double sep = std::hypot(c.input1[1] - c.input2[1], c.input1[2] * g1.c - c.input2[2] * g2.c);
      // Newton must stay next to the detected crossing; drifting towards s = 0,
      // where every ray image collapses onto the same point, is not a witness.
      const bool local = std::abs(s1 - s1_start) <= 2 * h1 + 1e-12 && std::abs(s2 - s2_start) <= 2 * h2 + 1e-12;
      c.polished = fn < 1e-10 && sep > 1e-6 && local && std::hypot(c.image[0], c.image[1]) > tolerance;
      // neighbouring segment pairs often detect the same crossing
      const bool duplicate = std::any_of(out.begin(), out.end(), [&](const RayCrossing& o) {
        return o.ray1 == c.ray1 && o.ray2 == c.ray2 && o.polished == c.polished &&
               std::hypot(o.input1[1] - c.input1[1], o.input1[2] - c.input1[2]) < 1e-9 &&
               std::hypot(o.input2[1] - c.input2[1], o.input2[2] - c.input2[2]) < 1e-9;
      });
      if (!duplicate) out.push_back(c);
    }
  }
  return out;
}

const char* to_string(Half h) { return h == Half::Upper ? "upper" : "lower"; }

Cloud point_cloud(const CloudOptions& opt) {
  if (opt.samples == 0) throw std::invalid_argument("cloud needs at least one sample");
  const CloudRegion& reg = opt.region;
  if (!(reg.a_min < reg.a_max && reg.b_min < reg.b_max && reg.r_max > 0 && reg.alpha_min <= reg.alpha_max))
    throw std::invalid_argument("empty sampling region");
  if (!(reg.a_max > 0 && reg.b_max > 0) && !(reg.a_min < 0 && reg.b_min < 0))
    throw std::invalid_argument("sampling region contains no positive forms");
  std::mt19937_64 rng(opt.seed);
  auto uniform = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  Cloud cloud;
  cloud.records.resize(opt.samples);
  for (std::size_t i = 0; i < opt.samples; ++i) {
    double A, B;
    for (;;) {
      A = reg.a_min + (reg.a_max - reg.a_min) * uniform();
      B = reg.b_min + (reg.b_max - reg.b_min) * uniform();
      if (A * B > 0) break;
      ++cloud.stats.rejected;
    }
    const double R = reg.r_max * (1.0 - uniform());
    const double alpha = reg.alpha_min + (reg.alpha_max - reg.alpha_min) * uniform();
    cloud.records[i].index = i;
    cloud.records[i].input = {A, B, R, alpha};
  }
  parallel_for(opt.samples, opt.threads, [&](std::size_t i) {
    CloudRecord& r = cloud.records[i];
    r.output = sp2u1_image(r.input[0], r.input[1], r.input[2], std::cos(r.input[3]), std::sin(r.input[3]));
    double n = 0.0;
    for (double x : r.output) n += x * x;
    n = std::sqrt(n) * (r.input[0] > 0 ? 1.0 : -1.0);
    for (std::size_t k = 0; k < 4; ++k) r.projective_output[k] = r.output[k] / n;
    r.half = r.output[0] * r.output[1] > 0 ? Half::Upper : Half::Lower;
  });
  CloudStats& st = cloud.stats;
  st.samples = opt.samples;
  std::size_t lower_negative = 0;
  for (const auto& r : cloud.records) {
    if (r.half == Half::Upper) {
      ++st.upper;
    } else {
      ++st.lower;
      lower_negative += r.projective_output[0] < 0;
    }
    if (std::abs(r.input[1]) <= opt.small_b * std::min(std::abs(r.input[0]), r.input[2])) {
      ++st.small_b;
      st.small_b_positive_x += r.projective_output[0] > 0;
    }
  }
  st.lower_negative_x_fraction = st.lower ? static_cast<double>(lower_negative) / static_cast<double>(st.lower) : 0.0;
  return cloud;
}

void write_cloud_csv(std::ostream& os, const Cloud& cloud) {
  os << "index,A,B,R,alpha,X,Y,Qcos,Qsin,pX,pY,pQcos,pQsin,half\n";
  for (const auto& r : cloud.records) {
    os << r.index;
    for (double x : r.input) os << ',' << num(x);
    for (double x : r.output) os << ',' << num(x);
    for (double x : r.projective_output) os << ',' << num(x);
    os << ',' << to_string(r.half) << '\n';
  }
}

void write_cloud_json(std::ostream& os, const Cloud& cloud) {
  const CloudStats& st = cloud.stats;
  nlohmann::ordered_json j;
  j["stats"] = {{"samples", st.samples},
                {"rejected", st.rejected},
                {"upper", st.upper},
                {"lower", st.lower},
                {"lower_negative_x_fraction", st.lower_negative_x_fraction},
                {"small_b", st.small_b},
                {"small_b_positive_x", st.small_b_positive_x}};
  auto& recs = j["records"] = nlohmann::ordered_json::array();
  for (const auto& r : cloud.records)
    recs.push_back({{"index", r.index},
                    {"input", r.input},
                    {"output", r.output},
                    {"projective_output", r.projective_output},
                    {"half", to_string(r.half)}});
  os << j.dump(1) << '\n';
}

NonPositivityWitness non_positivity_witness(double A, double R, double alpha) {
  if (A <= 0 || R <= 0) throw NotPositive("witness scan needs A > 0 and R > 0");
  const double c = std::cos(alpha), s = std::sin(alpha);
  auto image = [&](double B) { return sp2u1_image(A, B, R, c, s); };
  auto mixed = [](const std::array<double, 4>& m) { return (m[0] > 0) != (m[1] > 0) || m[0] == 0 || m[1] == 0; };
  NonPositivityWitness w;
  double prev = 1.0;
  auto prev_img = image(prev);
  if (mixed(prev_img)) throw std::runtime_error("image is already non-positive at B = 1");
  double B = prev;
  for (;;) {
    ++w.scan_steps;
    B *= 1.05;
    if (B > 1e4) throw std::runtime_error("no sign change of the image found");
    const auto img = image(B);
    if (mixed(img)) {
      w.b_star = B;
      w.image_at_b_star = img;
      break;
    }
    prev = B;
    prev_img = img;
  }
  const int k = (w.image_at_b_star[0] > 0) != (prev_img[0] > 0) ? 0 : 1;
  double lo = prev, hi = w.b_star;
  const bool lo_positive = prev_img[k] > 0;
  while (w.bisection_steps < 200) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    ++w.bisection_steps;
    ((image(mid)[k] > 0) == lo_positive ? lo : hi) = mid;
  }
  const auto flo = image(lo), fhi = image(hi);
  w.b_degenerate = std::abs(flo[k]) <= std::abs(fhi[k]) ? lo : hi;
  w.image_at_degenerate = image(w.b_degenerate);
  const SymmetrySpace& sp = preset(Symmetry::Sp2U1);
  const auto form = combine<double>(sp, std::span<const double>(w.image_at_degenerate));
  w.classification = induced_bilinear(form, sp.blocks).classification;
  return w;
}

}  // namespace g2lap
