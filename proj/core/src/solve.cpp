#include "g2lap/solve.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numbers>

#include "g2lap/dual.hpp"

namespace g2lap {

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

double norm(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double wrap_angle(double a) {
  a = std::fmod(a, kTwoPi);
  return a < 0 ? a + kTwoPi : a;
}

using Vec4 = std::array<double, 4>;

Vec4 sp2u1_image(const Vec4& v) {
  const auto m = closed_form_map<double>(Symmetry::Sp2U1, v[0], v[1], v[2], std::cos(v[3]), std::sin(v[3]));
  return {m[0], m[1], m[2], m[3]};
}

Eigen::Matrix4d sp2u1_jacobian(const Vec4& v) {
  Eigen::Matrix4d J;
  for (int k = 0; k < 4; ++k) {
    using D = Dual<double>;
    D A(v[0], k == 0), B(v[1], k == 1), R(v[2], k == 2);
    D c(std::cos(v[3]), k == 3 ? -std::sin(v[3]) : 0.0);
    D s(std::sin(v[3]), k == 3 ? std::cos(v[3]) : 0.0);
    const auto m = closed_form_map<D>(Symmetry::Sp2U1, A, B, R, c, s);
    for (int r = 0; r < 4; ++r) J(r, k) = m[static_cast<std::size_t>(r)].d;
  }
  return J;
}

bool sp2u1_admissible(const Vec4& v) { return v[0] * v[1] > 0 && v[2] > 0 && std::isfinite(v[0] + v[1] + v[2] + v[3]); }

double residual_norm(const Vec4& v, const Vec4& target) {
  const Vec4 f = sp2u1_image(v);
  double s = 0.0;
  for (int i = 0; i < 4; ++i) s += (f[i] - target[i]) * (f[i] - target[i]);
  return std::sqrt(s);
}

struct NewtonOutcome {
  Vec4 v;
  double rel = 0.0;
  int iterations = 0;
  bool converged = false;
};

NewtonOutcome sp2u1_newton(Vec4 v, const Vec4& target, const PoissonOptions& opt) {
  const double tnorm = norm(target);
  double res = residual_norm(v, target);
  NewtonOutcome out{v, res / tnorm, 0, false};
  for (int it = 0; it < opt.max_iterations; ++it) {
    out.iterations = it + 1;
    if (res / tnorm < opt.target_residual) break;
    const Vec4 f = sp2u1_image(v);
    Eigen::Vector4d rhs;
    for (int i = 0; i < 4; ++i) rhs[i] = target[i] - f[i];
    const Eigen::Vector4d step = sp2u1_jacobian(v).fullPivLu().solve(rhs);
    if (!step.allFinite()) break;
    double t = 1.0;
    bool accepted = false;
    for (int h = 0; h < 40; ++h, t *= 0.5) {
      Vec4 cand{v[0] + t * step[0], v[1] + t * step[1], v[2] + t * step[2], v[3] + t * step[3]};
      if (!sp2u1_admissible(cand)) continue;
      const double cres = residual_norm(cand, target);
      if (cres < res) {
        const double move = t * step.norm();
        v = cand;
        res = cres;
        accepted = true;
        if (move < 1e-14 * std::max(1.0, std::hypot(v[0], v[1], v[2]))) it = opt.max_iterations;
        break;
      }
    }
    if (!accepted) break;
  }
  v[3] = wrap_angle(v[3]);
  out.v = v;
  out.rel = res / tnorm;
  out.converged = out.rel < opt.accept_residual;
  return out;
}

ParamPoint<double> sp2sp1_solve(double X, double Y) {
  if (!(X * Y > 0)) throw NotPositiveTarget("Sp2Sp1 target needs X, Y of the same sign");
  const double rho = Y / X;
  double lo = 0.0, hi = 1.0;
  while (sp2sp1_ratio(hi) < rho) hi *= 2;
  for (int i = 0; i < 2000 && hi - lo > 0; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (sp2sp1_ratio(mid) < rho ? lo : hi) = mid;
  }
  const double t = 0.5 * (lo + hi);
  const double b1 = std::cbrt(t);
  const double x1 = closed_form_map<double>(Symmetry::Sp2Sp1, 1.0, b1, 1.0, 1.0, 0.0)[0];
  const double scale = X / x1;  // cube root of the scale factor, sign = orientation
  ParamPoint<double> p;
  p.symmetry = Symmetry::Sp2Sp1;
  p.A = scale;
  p.B = scale * b1;
  return p;
}

ParamPoint<double> su4_solve(std::span<const double> t) {
  const double X = t[0], q = std::hypot(t[1], t[2]);
  if (X == 0 || q == 0) throw NotPositiveTarget("SU4 target needs X != 0 and a nonzero (V_R, V_I) part");
  const double lu = std::log(9 * std::abs(X) / 16), lw = std::log(q / 144);
  ParamPoint<double> p;
  p.symmetry = Symmetry::SU4;
  p.A = std::copysign(std::exp((7 * lu + 8 * lw) / 15), X);
  p.R = std::exp((2 * lu + 3 * lw) / 5);
  p.cos_alpha = t[1] / q;
  p.sin_alpha = t[2] / q;
  return p;
}

ParamPoint<double> sp2u1_default_seed(std::span<const double> t) {
  const auto base = sp2sp1_solve(t[0], t[1]);
  ParamPoint<double> seed;
  seed.symmetry = Symmetry::Sp2U1;
  seed.A = base.A;
  seed.B = base.B;
  seed.R = std::abs(base.B);
  seed.cos_alpha = t[2] >= 0 ? 1.0 : -1.0;
  seed.sin_alpha = 0.0;
  return seed;
}

}  // namespace

double sp2sp1_ratio(double t) { return t * (t * t + t + 6) / (6 * (t + 1)); }

double relative_residual(const ParamPoint<double>& p, std::span<const double> target) {
  const auto img = closed_form_laplacian(p);
  double s = 0.0;
  for (std::size_t i = 0; i < img.size(); ++i) s += (img[i] - target[i]) * (img[i] - target[i]);
  return std::sqrt(s) / norm(target);
}

PoissonResult poisson_solve(std::span<const double> target, Symmetry s, std::optional<ParamPoint<double>> seed,
                            const PoissonOptions& options) {
  if (target.size() != preset(s).dimension()) throw std::invalid_argument("target has the wrong number of coefficients");
  for (double x : target)
    if (!std::isfinite(x)) throw NotPositiveTarget("target is not finite");
  PoissonResult out;
  switch (s) {
    case Symmetry::Spin7:
      if (target[0] == 0) throw NotPositiveTarget("Spin7 target must be nonzero");
      out.point.symmetry = Symmetry::Spin7;
      out.point.A = target[0] / 16;
      break;
    case Symmetry::SU4: out.point = su4_solve(target); break;
    case Symmetry::Sp2Sp1: out.point = sp2sp1_solve(target[0], target[1]); break;
    case Symmetry::Sp2U1: {
      // images of positive forms need not be positive, so only the default seed restricts the target
      if (norm(target) == 0) throw NotPositiveTarget("Sp2U1 target must be nonzero");
      if (!seed && (!(target[0] * target[1] > 0) || std::hypot(target[2], target[3]) == 0))
        throw NotPositiveTarget("the default Sp2U1 seed needs X, Y of the same sign and a nonzero (V_R, V_I) part");
      const ParamPoint<double> start = seed ? *seed : sp2u1_default_seed(target);
      if (start.symmetry != Symmetry::Sp2U1 || !is_positive(start))
        throw std::invalid_argument("Sp2U1 seed must be a positive Sp2U1 point");
      const Vec4 tgt{target[0], target[1], target[2], target[3]};
      const Vec4 v0{start.A, start.B, start.R, start.alpha()};
      NewtonOutcome res = sp2u1_newton(v0, tgt, options);
      out.iterations = res.iterations;
      if (!res.converged) {
        // homotopy from the seed image towards the target
        out.used_continuation = true;
        const Vec4 from = sp2u1_image(v0);
        Vec4 v = v0;
        double s0 = 0.0, h = 0.25;
        while (s0 < 1.0) {
          const double s1 = std::min(1.0, s0 + h);
          Vec4 mid;
          for (int i = 0; i < 4; ++i) mid[i] = (1 - s1) * from[i] + s1 * tgt[i];
          NewtonOutcome step = sp2u1_newton(v, mid, options);
          out.iterations += step.iterations;
          if (step.converged) {
            v = step.v;
            s0 = s1;
            h = std::min(0.25, 2 * h);
          } else {
            h *= 0.5;
            if (h < 1.0 / 4096) throw NewtonDiverged("Newton continuation failed to reach the Sp2U1 target");
          }
        }
        res = sp2u1_newton(v, tgt, options);
        out.iterations += res.iterations;
        if (!res.converged) throw NewtonDiverged("Newton iteration did not converge for the Sp2U1 target");
      }
      out.point = make_point(Symmetry::Sp2U1, std::vector<double>{res.v[0], res.v[1], res.v[2], res.v[3]});
      break;
    }
  }
  out.relative_residual = relative_residual(out.point, target);
  return out;
}

const char* to_string(EigenformKind k) {
  return k == EigenformKind::NearlyParallel ? "NearlyParallel" : "CoclosedOnly";
}

namespace {

struct Proportionality {
  double factor = 0.0;
  double residual = 0.0;
};

Proportionality proportional(std::span<const double> image, std::span<const double> u) {
  Proportionality p;
  p.factor = dot(image, u) / dot(u, u);
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += (image[i] - p.factor * u[i]) * (image[i] - p.factor * u[i]);
  const double scale = std::max(norm(image), 1e-300);
  p.residual = std::sqrt(s) / scale;
  return p;
}

}  // namespace

EigenformReport eigenform_classify(const ParamPoint<double>& p, double eps) {
  const TorsionReport torsion = torsion_type(p);
  if (!torsion.coclosed) throw NotCoclosed("form is not coclosed");
  const auto u = chart_coefficients(p);
  const auto lap = laplacian_coefficients(p);
  const auto sd = star_derivative_coefficients(p);
  const Proportionality l = proportional(lap, u);
  if (l.residual > eps || l.factor <= 0) throw NotEigenform("Laplacian image is not a positive multiple of the form");
  const Proportionality d = proportional(sd, u);
  EigenformReport rep;
  rep.point = p;
  rep.lambda = l.factor;
  rep.residual = l.residual;
  rep.d_residual = d.residual;
  if (d.residual <= eps) {
    rep.kind = EigenformKind::NearlyParallel;
    rep.tau0 = d.factor;
  } else {
    rep.kind = EigenformKind::CoclosedOnly;
  }
  return rep;
}

std::optional<EigenformKind> classify_eigenvector(const DenseMatrix<double>& D, std::span<const double> u,
                                                  double eps) {
  const std::vector<double> uv(u.begin(), u.end());
  const auto du = D.apply(uv);
  const auto d2u = D.apply(du);
  if (proportional(d2u, u).residual > eps) return std::nullopt;
  return proportional(du, u).residual <= eps ? EigenformKind::NearlyParallel : EigenformKind::CoclosedOnly;
}

double trace_criterion(const DenseMatrix<double>& D) {
  const std::size_t n = D.rows();
  Eigen::MatrixXd m(n, n);
  double tr = 0.0;
  for (std::size_t i = 0; i < n; ++i) tr += D(i, i);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = D(i, j) - (i == j ? tr : 0.0);
  return m.determinant();
}

std::vector<ParamPoint<double>> sample_circle(const FixedCircle& c, std::size_t n) {
  std::vector<ParamPoint<double>> out;
  for (std::size_t k = 0; k < n; ++k) {
    const double a = kTwoPi * static_cast<double>(k) / static_cast<double>(n);
    out.push_back(make_point(Symmetry::SU4, std::vector<double>{c.A, c.R, a}));
  }
  return out;
}

double family_curve(double A, double B) {
  return A * std::pow(B, 6) - std::pow(B, 7) + 2 * std::pow(A, 6) * B - 8 * std::pow(A, 6) + 2 * std::pow(B, 6);
}

double family_radius(double A, double B) {
  const double a6 = std::pow(A, 6), b6 = std::pow(B, 6);
  return std::pow(a6 * b6 / (4 * a6 - b6), 1.0 / 6.0);
}

std::optional<double> family_curve_solve(double B) {
  const double lead = 2 * B - 8;
  if (lead == 0) return std::nullopt;
  const double bound = 1 + std::max(std::abs(std::pow(B, 6) / lead), std::abs((2 * std::pow(B, 6) - std::pow(B, 7)) / lead));
  auto f = [B](double A) { return family_curve(A, B); };
  auto df = [B](double A) { return std::pow(B, 6) + 12 * std::pow(A, 5) * B - 48 * std::pow(A, 5); };
  std::optional<double> best;
  const int n = 4000;
  double prev_a = 0.0, prev_f = f(0.0);
  for (int k = 1; k <= n; ++k) {
    const double a = bound * k / n;
    const double fa = f(a);
    if (prev_f == 0 || (prev_f < 0) != (fa < 0)) {
      double lo = prev_a, hi = a;
      for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        ((f(lo) < 0) == (f(mid) < 0) ? lo : hi) = mid;
      }
      double root = 0.5 * (lo + hi);
      for (int i = 0; i < 5; ++i) {
        const double d = df(root);
        if (d == 0) break;
        const double next = root - f(root) / d;
        if (!(next > lo - (hi - lo) && next < hi + (hi - lo))) break;
        root = next;
      }
      if (root > 0 && 4 * std::pow(root, 6) > std::pow(B, 6) && (!best || root > *best)) best = root;
    }
    prev_a = a;
    prev_f = fa;
  }
  return best;
}

namespace {

/// Sign changes of f on a log grid of (lo, hi), refined by bisection.
std::vector<double> scan_roots(const std::function<double(double)>& f, double lo, double hi, int n) {
  std::vector<double> roots;
  const double llo = std::log(lo), lhi = std::log(hi);
  double px = lo, pf = f(lo);
  for (int k = 1; k <= n; ++k) {
    const double x = std::exp(llo + (lhi - llo) * k / n);
    const double fx = f(x);
    if ((pf < 0) != (fx < 0)) {
      double a = px, b = x;
      for (int i = 0; i < 200; ++i) {
        const double m = 0.5 * (a + b);
        if (m <= a || m >= b) break;
        ((f(a) < 0) == (f(m) < 0) ? a : b) = m;
      }
      roots.push_back(0.5 * (a + b));
    }
    px = x;
    pf = fx;
  }
  return roots;
}

/// Genuine fixed points c*u and -c*u on the line through u (Delta_u u = lambda u, c = lambda^{3/2}).
std::vector<ParamPoint<double>> scale_line(Symmetry s, const std::vector<double>& u) {
  const auto p = point_from_coefficients(s, u);
  const auto img = laplacian_coefficients(p);
  const double lambda = dot(img, u) / dot(u, u);
  const double c = std::pow(lambda, 1.5);
  std::vector<ParamPoint<double>> out;
  for (int sign : {1, -1}) {
    std::vector<double> v(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) v[i] = sign * c * u[i];
    out.push_back(point_from_coefficients(s, v));
  }
  return out;
}

std::vector<std::vector<double>> sp2u1_eigen_lines() {
  // directions u = (1, b, x, y) in basis3 coefficients; solve Delta u ~ u over
  // the whole chart, including sin(alpha) != 0
  using V3 = Eigen::Vector3d;
  auto residual = [](const V3& v) -> V3 {
    const std::vector<double> u{1.0, v[0], v[1], v[2]};
    const auto p = point_from_coefficients(Symmetry::Sp2U1, u);
    if (!is_positive(p)) return V3::Constant(std::nan(""));
    const auto img = closed_form_laplacian(p);
    return {img[1] / img[0] - v[0], img[2] / img[0] - v[1], img[3] / img[0] - v[2]};
  };
  std::vector<std::vector<double>> lines;
  const int n = 12, angles = 8;
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j)
      for (int k = 0; k < angles; ++k) {
        const double q = std::pow(10.0, -2.0 + 4.0 * j / n), th = kTwoPi * (k + 0.5) / angles;
        V3 v(std::pow(10.0, -2.0 + 4.0 * i / n), q * std::cos(th), q * std::sin(th));
        bool ok = false;
        for (int it = 0; it < 60; ++it) {
          const V3 g = residual(v);
          if (!g.allFinite()) break;
          if (g.norm() < 1e-14 * std::max(1.0, v.norm())) {
            ok = true;
            break;
          }
          Eigen::Matrix3d J;
          for (int c = 0; c < 3; ++c) {
            const double h = 1e-7 * std::max(std::abs(v[c]), 1e-3 * v.norm());
            V3 vp = v, vm = v;
            vp[c] += h;
            vm[c] -= h;
            J.col(c) = (residual(vp) - residual(vm)) / (2 * h);
          }
          if (!J.allFinite()) break;
          const V3 step = J.fullPivLu().solve(g);
          if (!step.allFinite()) break;
          double t = 1.0;
          while (t > 1e-6 && v[0] - t * step[0] <= 0) t *= 0.5;
          v -= t * step;
          if (v[0] <= 0 || v.norm() > 1e4) break;
        }
        const double r = std::hypot(v[1], v[2]);
        if (!ok || v[0] < 1e-6 || v[0] > 1e6 || r < 1e-6 || r > 1e6) continue;
        if (std::abs(v[2]) < 1e-12 * r) v[2] = 0.0;
        const std::vector<double> u{1.0, v[0], v[1], v[2]};
        bool seen = false;
        for (const auto& l : lines)
          if (std::hypot(l[1] - u[1], l[2] - u[2], l[3] - u[3]) < 1e-6 * std::max(1.0, v.norm())) seen = true;
        if (!seen) lines.push_back(u);
      }
  std::sort(lines.begin(), lines.end());
  return lines;
}

}  // namespace

FixedPointSet fixed_points(Symmetry s, std::size_t curve_samples) {
  FixedPointSet set;
  set.symmetry = s;
  std::vector<std::vector<double>> lines;
  switch (s) {
    case Symmetry::Spin7:
      set.stated_count = 2;
      lines.push_back({1.0});
      break;
    case Symmetry::SU4: {
      set.stated_count = 2;  // circles
      auto g = [](double a) {
        const auto img = laplacian_coefficients(make_point(Symmetry::SU4, std::vector<double>{a, 1.0, 0.0}));
        return img[0] - img[1] * a * a * a;
      };
      for (double a : scan_roots(g, 0.1, 10.0, 64)) lines.push_back({a * a * a, 1.0, 0.0});
      break;
    }
    case Symmetry::Sp2Sp1: {
      set.stated_count = 2;
      auto g = [](double t) {
        const auto img = laplacian_coefficients(make_point(Symmetry::Sp2Sp1, std::vector<double>{1.0, std::cbrt(t)}));
        return img[1] - img[0] * t;
      };
      for (double t : scan_roots(g, 1e-2, 1e2, 96)) lines.push_back({1.0, t});
      break;
    }
    case Symmetry::Sp2U1:
      set.stated_count = 8;
      lines = sp2u1_eigen_lines();
      break;
  }
  set.preserved_lines = lines.size();
  for (const auto& u : lines) {
    for (const auto& p : scale_line(s, u)) {
      set.points.push_back(eigenform_classify(p));
      if (s == Symmetry::SU4)
        set.circles.push_back({sign_of(p.A), p.A, p.R, p.A / p.R});
    }
  }
  if (s == Symmetry::Sp2U1) {
    for (std::size_t k = 0; k < curve_samples; ++k) {
      const double B = 0.1 + 3.4 * static_cast<double>(k) / static_cast<double>(std::max<std::size_t>(curve_samples - 1, 1));
      const auto A = family_curve_solve(B);
      if (!A) continue;
      CurveSample cs;
      cs.point = make_point(Symmetry::Sp2U1, std::vector<double>{*A, B, family_radius(*A, B), 0.0});
      cs.curve_residual = family_curve(*A, B);
      const auto u = chart_coefficients(cs.point);
      cs.d2_residual = proportional(laplacian_coefficients(cs.point), u).residual;
      cs.d_residual = proportional(star_derivative_coefficients(cs.point), u).residual;
      set.curve.push_back(cs);
    }
  }
  return set;
}

}  // namespace g2lap
