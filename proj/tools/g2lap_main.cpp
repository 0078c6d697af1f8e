#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "g2lap/errors.hpp"
#include "g2lap/experiments.hpp"
#include "g2lap/laplace.hpp"
#include "g2lap/ledger.hpp"
#include "g2lap/solve.hpp"

using namespace g2lap;
using json = nlohmann::ordered_json;

namespace {

enum Exit { kOk = 0, kInput = 2, kDiverged = 3, kIo = 4 };

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x + 0.0);
  return buf;
}

std::string join(const std::vector<std::string>& parts) {
  std::string out = "(";
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? ", " : "") + parts[i];
  return out + ")";
}

std::string join(const std::vector<double>& v) {
  std::vector<std::string> s;
  for (double x : v) s.push_back(num(x));
  return join(s);
}

template <std::size_t N>
std::string join(const std::array<double, N>& v) {
  return join(std::vector<double>(v.begin(), v.end()));
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

/// Accepts plain numbers and multiples of pi such as "pi", "-pi/2", "2pi".
double parse_real(const std::string& text) {
  const auto at = text.find("pi");
  if (at == std::string::npos) return std::stod(text);
  std::string head = text.substr(0, at), tail = text.substr(at + 2);
  double k = 1;
  if (head == "-")
    k = -1;
  else if (!head.empty() && head != "+")
    k = std::stod(head);
  double den = 1;
  if (!tail.empty()) {
    if (tail[0] != '/') throw std::invalid_argument("cannot parse '" + text + "'");
    den = std::stod(tail.substr(1));
  }
  return k * std::numbers::pi / den;
}

std::vector<double> parse_reals(const std::vector<std::string>& items) {
  std::vector<double> out;
  for (const auto& s : items) out.push_back(parse_real(s));
  return out;
}

/// Exact angle: 0, pi, pi/2, -pi/2 or a rational point "c:s" on the unit circle.
std::pair<Rational, Rational> parse_exact_angle(const std::string& text) {
  if (const auto colon = text.find(':'); colon != std::string::npos) {
    Rational c = parse_rational(text.substr(0, colon)), s = parse_rational(text.substr(colon + 1));
    if (c * c + s * s != 1) throw std::invalid_argument("angle " + text + " is not on the unit circle");
    return {c, s};
  }
  const double a = parse_real(text);
  const double turns = a / (std::numbers::pi / 2);
  if (std::abs(turns - std::round(turns)) > 1e-15)
    throw InexactError("exact backend needs a multiple of pi/2 or a rational point c:s for the angle");
  switch (((static_cast<long>(std::lround(turns)) % 4) + 4) % 4) {
    case 0: return {Rational(1), Rational(0)};
    case 1: return {Rational(0), Rational(1)};
    case 2: return {Rational(-1), Rational(0)};
    default: return {Rational(0), Rational(-1)};
  }
}

ParamPoint<Rational> exact_point(Symmetry s, const std::vector<std::string>& c) {
  if (c.size() != coordinate_count(s))
    throw std::invalid_argument(std::string(symmetry_name(s)) + " expects " + std::to_string(coordinate_count(s)) +
                                " coordinates");
  ParamPoint<Rational> p;
  p.symmetry = s;
  switch (s) {
    case Symmetry::Spin7: p.A = parse_rational(c[0]); break;
    case Symmetry::SU4:
      p.A = parse_rational(c[0]);
      p.R = parse_rational(c[1]);
      std::tie(p.cos_alpha, p.sin_alpha) = parse_exact_angle(c[2]);
      break;
    case Symmetry::Sp2Sp1:
      p.A = parse_rational(c[0]);
      p.B = parse_rational(c[1]);
      break;
    case Symmetry::Sp2U1:
      p.A = parse_rational(c[0]);
      p.B = parse_rational(c[1]);
      p.R = parse_rational(c[2]);
      std::tie(p.cos_alpha, p.sin_alpha) = parse_exact_angle(c[3]);
      break;
  }
  return p;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  return f;
}

void finish(std::ofstream& f, const std::string& path) {
  f.flush();
  if (!f) throw IoError("write to '" + path + "' failed");
}

struct Common {
  std::string backend = "exact";
  double tolerance = 1e-9;
  std::string format = "text";
  std::string out;
};

json point_json(const ParamPoint<double>& p) {
  return {{"symmetry", symmetry_name(p.symmetry)}, {"coordinates", coordinates(p)}};
}

int cmd_laplacian(const Common& o, const std::string& sym, const std::vector<std::string>& coords) {
  const Symmetry s = parse_symmetry(sym);
  std::vector<std::string> closed, first, diff;
  bool exact = o.backend == "exact";
  if (exact) {
    const auto p = exact_point(s, coords);
    if (!is_positive(p)) throw NotPositive("input is not a positive 3-form");
    const auto a = closed_form_laplacian(p), b = laplacian_coefficients(p);
    for (std::size_t k = 0; k < a.size(); ++k) {
      closed.push_back(to_string(a[k]));
      first.push_back(to_string(b[k]));
      diff.push_back(to_string(Rational(b[k] - a[k])));
    }
  } else {
    const auto p = make_point(s, parse_reals(coords));
    if (!is_positive(p)) throw NotPositive("input is not a positive 3-form");
    const auto a = closed_form_laplacian(p), b = laplacian_coefficients(p);
    for (std::size_t k = 0; k < a.size(); ++k) {
      closed.push_back(num(a[k]));
      first.push_back(num(b[k]));
      diff.push_back(num(b[k] - a[k]));
    }
  }
  if (o.format == "json") {
    std::cout << json{{"symmetry", sym}, {"backend", o.backend}, {"closed_form", closed}, {"first_principles", first},
                      {"difference", diff}}
                     .dump(2)
              << '\n';
  } else {
    std::cout << "closed form       " << join(closed) << '\n'
              << "first principles  " << join(first) << '\n'
              << "difference        " << join(diff) << '\n';
  }
  return kOk;
}

int cmd_poisson(const Common& o, const std::string& sym, const std::vector<std::string>& target_text,
                const std::string& seed_text) {
  const Symmetry s = parse_symmetry(sym);
  const auto target = parse_reals(target_text);
  std::optional<ParamPoint<double>> seed;
  if (!seed_text.empty()) seed = make_point(s, parse_reals(split(seed_text, ',')));
  PoissonOptions opt;
  opt.accept_residual = std::max(o.tolerance, opt.target_residual);
  const auto r = poisson_solve(target, s, seed, opt);
  const auto image = closed_form_laplacian(r.point);
  if (o.format == "json") {
    std::cout << json{{"solution", point_json(r.point)},
                      {"image", image},
                      {"relative_residual", r.relative_residual},
                      {"iterations", r.iterations},
                      {"continuation", r.used_continuation}}
                     .dump(2)
              << '\n';
  } else {
    std::cout << "solution   " << join(coordinates(r.point)) << '\n'
              << "image      " << join(image) << '\n'
              << "residual   " << num(r.relative_residual) << '\n'
              << "iterations " << r.iterations << (r.used_continuation ? " (continuation)" : "") << '\n';
  }
  return kOk;
}

struct RayArgs {
  std::string plane = "a=1";
  std::string alphas = "0,pi";
  std::size_t rays = 24, steps = 200;
  double s_min = 0.05, s_max = 3;
  unsigned threads = 0;
  bool crossings = false;
};

int cmd_ray_image(const Common& o, const RayArgs& a) {
  RayImageOptions opt;
  const auto eq = a.plane.find('=');
  if (eq == std::string::npos || a.plane.substr(0, eq) != "a")
    throw std::invalid_argument("--plane expects a=VALUE");
  opt.plane_a = parse_real(a.plane.substr(eq + 1));
  opt.alphas = parse_reals(split(a.alphas, ','));
  if (a.rays < 1 || a.steps < 1) throw std::invalid_argument("--rays and --steps must be at least 1");
  if (!(a.s_min > 0 && a.s_max >= a.s_min)) throw std::invalid_argument("need 0 < s-min <= s-max");
  opt.rays = a.rays;
  opt.steps = a.steps;
  opt.s_min = a.s_min;
  opt.s_max = a.s_max;
  opt.threads = a.threads;
  const auto records = ray_image(opt);
  if (o.out.empty()) {
    write_ray_csv(std::cout, records);
  } else {
    auto f = open_out(o.out);
    write_ray_csv(f, records);
    finish(f, o.out);
  }
  if (a.crossings) {
    const auto cs = find_crossings(records, opt, 1e-6);
    std::size_t polished = 0;
    for (const auto& c : cs) polished += c.polished;
    std::ostream& log = o.out.empty() ? std::cerr : std::cout;
    log << cs.size() << " crossings, " << polished << " polished\n";
    for (const auto& c : cs)
      if (c.polished)
        log << "rays " << c.ray1 << ' ' << c.ray2 << "  inputs " << join(c.input1) << ' ' << join(c.input2)
            << "  image " << join(c.image) << "  gap " << num(c.gap) << " -> " << num(c.polished_gap) << '\n';
  }
  return kOk;
}

CloudRegion parse_region(const std::string& text) {
  CloudRegion r;
  if (text.empty()) return r;
  for (const auto& item : split(text, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("region item '" + item + "' lacks '='");
    const std::string key = item.substr(0, eq), val = item.substr(eq + 1);
    const auto colon = val.find(':');
    auto range = [&](double& lo, double& hi) {
      if (colon == std::string::npos) throw std::invalid_argument("region item '" + item + "' needs lo:hi");
      lo = parse_real(val.substr(0, colon));
      hi = parse_real(val.substr(colon + 1));
      if (!(lo < hi)) throw std::invalid_argument("empty range in '" + item + "'");
    };
    if (key == "a")
      range(r.a_min, r.a_max);
    else if (key == "b")
      range(r.b_min, r.b_max);
    else if (key == "alpha")
      range(r.alpha_min, r.alpha_max);
    else if (key == "r") {
      r.r_max = parse_real(val);
      if (!(r.r_max > 0)) throw std::invalid_argument("r must be positive");
    } else
      throw std::invalid_argument("unknown region key '" + key + "'");
  }
  return r;
}

int cmd_cloud(const Common& o, std::size_t samples, std::uint64_t seed, const std::string& region, unsigned threads) {
  if (samples < 1) throw std::invalid_argument("--samples must be at least 1");
  CloudOptions opt;
  opt.samples = samples;
  opt.seed = seed;
  opt.region = parse_region(region);
  opt.threads = threads;
  const auto cloud = point_cloud(opt);
  auto write = [&](std::ostream& os) {
    if (o.format == "json")
      write_cloud_json(os, cloud);
    else
      write_cloud_csv(os, cloud);
  };
  if (o.out.empty()) {
    write(std::cout);
  } else {
    auto f = open_out(o.out);
    write(f);
    finish(f, o.out);
  }
  const auto& st = cloud.stats;
  (o.out.empty() ? std::cerr : std::cout)
      << "samples " << st.samples << ", rejected draws " << st.rejected << ", upper " << st.upper << ", lower "
      << st.lower << ", lower with X < 0: " << num(st.lower_negative_x_fraction) << ", small B " << st.small_b
      << " (X > 0: " << st.small_b_positive_x << ")\n";
  return kOk;
}

json report_json(const EigenformReport& r) {
  json j = point_json(r.point);
  j["kind"] = to_string(r.kind);
  j["lambda"] = r.lambda;
  j["tau0"] = r.tau0 ? json(*r.tau0) : json(nullptr);
  j["residual"] = r.residual;
  j["d_residual"] = r.d_residual;
  return j;
}

int cmd_fixed_points(const Common& o, const std::string& sym, std::size_t curve_samples) {
  const Symmetry s = parse_symmetry(sym);
  const auto set = fixed_points(s, curve_samples);
  json j;
  j["symmetry"] = sym;
  j["stated_count"] = set.stated_count;
  j["preserved_lines"] = set.preserved_lines;
  j["points"] = json::array();
  for (const auto& r : set.points) j["points"].push_back(report_json(r));
  j["circles"] = json::array();
  for (const auto& c : set.circles)
    j["circles"].push_back({{"orientation", c.orientation}, {"A", c.A}, {"R", c.R}, {"radius_ratio", c.radius_ratio}});
  j["curve"] = json::array();
  for (const auto& c : set.curve) {
    json e = point_json(c.point);
    e["curve_residual"] = c.curve_residual;
    e["d2_residual"] = c.d2_residual;
    e["d_residual"] = c.d_residual;
    j["curve"].push_back(e);
  }

  if (!o.out.empty()) {
    auto f = open_out(o.out);
    f << j.dump(2) << '\n';
    finish(f, o.out);
  }
  if (o.format == "json" && o.out.empty()) {
    std::cout << j.dump(2) << '\n';
    return kOk;
  }
  std::cout << sym << ": " << set.points.size() << " fixed points on " << set.preserved_lines
            << " preserved lines (stated count " << set.stated_count << ")\n";
  std::printf("%-16s %-44s %-22s %-22s %s\n", "kind", "coordinates", "lambda", "tau0", "residual");
  for (const auto& r : set.points)
    std::printf("%-16s %-44s %-22s %-22s %.3g\n", to_string(r.kind), join(coordinates(r.point)).c_str(),
                num(r.lambda).c_str(), r.tau0 ? num(*r.tau0).c_str() : "-", r.residual);
  for (const auto& c : set.circles)
    std::cout << "circle: orientation " << c.orientation << ", A = " << num(c.A) << ", R = " << num(c.R)
              << ", A/R = " << num(c.radius_ratio) << ", alpha free\n";
  if (!set.curve.empty()) {
    double worst_d2 = 0, best_d = INFINITY;
    for (const auto& c : set.curve) {
      worst_d2 = std::max(worst_d2, c.d2_residual);
      best_d = std::min(best_d, c.d_residual);
    }
    std::cout << "curve: " << set.curve.size() << " samples, max Laplacian eigen residual " << num(worst_d2)
              << ", min *d eigen residual " << num(best_d) << '\n';
  }
  return kOk;
}

int cmd_ledger(const Common& o) {
  const auto entries = formula_ledger();
  if (o.out.empty()) {
    write_ledger_json(std::cout, entries);
  } else {
    auto f = open_out(o.out);
    write_ledger_json(f, entries);
    finish(f, o.out);
    std::size_t ok = 0;
    for (const auto& e : entries) ok += e.match;
    std::cout << entries.size() << " entries, " << ok << " match, " << entries.size() - ok << " corrected\n";
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"G2-Laplacian on invariant 3-forms of the 7-sphere"};
  app.require_subcommand(1);
  Common common;
  app.add_option("--backend", common.backend, "Scalar backend")
      ->check(CLI::IsMember({"exact", "float"}))
      ->capture_default_str();
  app.add_option("--tolerance", common.tolerance, "Float tolerance")->capture_default_str();
  app.add_option("--format", common.format, "Output format")->check(CLI::IsMember({"text", "json", "csv"}));
  app.add_option("--out", common.out, "Output file");

  std::string sym;
  std::vector<std::string> coords;

  auto* lap = app.add_subcommand("laplacian", "Delta_phi phi at a chart point");
  lap->add_option("symmetry", sym)->required();
  lap->add_option("coords", coords)->required();

  std::string seed_text;
  auto* poi = app.add_subcommand("poisson", "Solve Delta_phi phi = target");
  poi->add_option("symmetry", sym)->required();
  poi->add_option("target", coords)->required();
  poi->add_option("--seed", seed_text, "Initial chart point, comma separated");

  RayArgs rays;
  auto* ray = app.add_subcommand("ray-image", "Images of rays in an A = const plane");
  ray->add_option("--plane", rays.plane)->capture_default_str();
  ray->add_option("--alphas", rays.alphas)->capture_default_str();
  ray->add_option("--rays", rays.rays)->capture_default_str();
  ray->add_option("--steps", rays.steps)->capture_default_str();
  ray->add_option("--s-min", rays.s_min)->capture_default_str();
  ray->add_option("--s-max", rays.s_max)->capture_default_str();
  ray->add_option("--threads", rays.threads);
  ray->add_flag("--crossings", rays.crossings, "Report crossings between ray images");

  std::size_t samples = 10000;
  std::uint64_t seed = 1;
  std::string region;
  unsigned threads = 0;
  auto* cld = app.add_subcommand("cloud", "Projective images of a random point cloud");
  cld->add_option("--samples", samples)->capture_default_str();
  cld->add_option("--seed", seed)->capture_default_str();
  cld->add_option("--region", region, "e.g. a=-3:3,b=-3:3,r=3,alpha=0:2pi");
  cld->add_option("--threads", threads);

  std::size_t curve_samples = 512;
  auto* fix = app.add_subcommand("fixed-points", "Fixed points of the G2-Laplacian flow");
  fix->add_option("symmetry", sym)->required();
  fix->add_option("--curve-samples", curve_samples)->capture_default_str();

  auto* led = app.add_subcommand("ledger", "Formula ledger as JSON");

  // options given after the subcommand belong to it in CLI11; accept both placements
  for (auto* sub : {lap, poi, ray, cld, fix, led}) {
    sub->add_option("--backend", common.backend)->check(CLI::IsMember({"exact", "float"}));
    sub->add_option("--tolerance", common.tolerance);
    sub->add_option("--format", common.format)->check(CLI::IsMember({"text", "json", "csv"}));
    sub->add_option("--out", common.out);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kInput;
  }

  try {
    if (*lap) return cmd_laplacian(common, sym, coords);
    if (*poi) return cmd_poisson(common, sym, coords, seed_text);
    if (*ray) return cmd_ray_image(common, rays);
    if (*cld) return cmd_cloud(common, samples, seed, region, threads);
    if (*fix) return cmd_fixed_points(common, sym, curve_samples);
    if (*led) return cmd_ledger(common);
  } catch (const NewtonDiverged& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDiverged;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInput;
  }
  return kOk;
}
