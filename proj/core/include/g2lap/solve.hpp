#pragma once

#include <optional>
#include <span>
#include <vector>

#include "g2lap/dense.hpp"
#include "g2lap/laplace.hpp"
#include "g2lap/polynomial.hpp"

namespace g2lap {

struct PoissonOptions {
  double target_residual = 1e-13;  // relative, Newton stopping rule
  double accept_residual = 1e-10;  // relative, below this the solve is accepted
  int max_iterations = 100;
};

struct PoissonResult {
  ParamPoint<double> point;
  double relative_residual = 0.0;
  int iterations = 0;
  bool used_continuation = false;
};

/// ||Delta_p p - target|| / ||target|| using the closed-form map.
double relative_residual(const ParamPoint<double>& p, std::span<const double> target);

/// Solves Delta_phi phi = mu for mu given by its basis3 coefficients.
/// Sp2U1 uses damped Newton from `seed` (default: the matching point on the
/// B = R, alpha in {0, pi} locus) and throws NewtonDiverged on failure.
PoissonResult poisson_solve(std::span<const double> target, Symmetry s,
                            std::optional<ParamPoint<double>> seed = std::nullopt,
                            const PoissonOptions& options = {});

/// Sp2Sp1 ratio Y/X along the ray B^3 = t A^3.
double sp2sp1_ratio(double t);

enum class EigenformKind { NearlyParallel, CoclosedOnly };
const char* to_string(EigenformKind k);

struct EigenformReport {
  EigenformKind kind = EigenformKind::NearlyParallel;
  ParamPoint<double> point;
  double lambda = 0.0;           // Delta phi = lambda phi
  std::optional<double> tau0;    // *d phi = tau0 phi for nearly parallel forms
  double residual = 0.0;         // relative residual of the Laplacian eigen equation
  double d_residual = 0.0;       // relative residual of the D eigen equation
};

/// Classifies a coclosed Laplacian eigenform. Errors: NotPositive,
/// NotCoclosed, NotEigenform (Delta phi not proportional to phi).
EigenformReport eigenform_classify(const ParamPoint<double>& p, double eps = 1e-9);

/// Eigenvector test on a coclosed-block matrix D: NearlyParallel if D u ~ u,
/// CoclosedOnly if only D^2 u ~ u, nullopt otherwise.
std::optional<EigenformKind> classify_eigenvector(const DenseMatrix<double>& D, std::span<const double> u,
                                                  double eps = 1e-9);

/// det(D - tr(D) I).
double trace_criterion(const DenseMatrix<double>& D);

struct FixedCircle {
  int orientation = 1;
  double A = 0.0;
  double R = 0.0;
  double radius_ratio = 0.0;  // A / R
};

struct CurveSample {
  ParamPoint<double> point;
  double curve_residual = 0.0;  // implicit curve equation after polishing
  double d2_residual = 0.0;     // relative residual of Delta phi = lambda phi
  double d_residual = 0.0;      // relative residual of *d phi = tau phi
};

struct FixedPointSet {
  Symmetry symmetry = Symmetry::SU4;
  std::vector<EigenformReport> points;  // for SU4 the alpha = 0 representatives
  std::vector<FixedCircle> circles;     // SU4 only
  std::size_t preserved_lines = 0;
  std::size_t stated_count = 0;         // previously claimed count, kept for comparison
  std::vector<CurveSample> curve;       // Sp2U1 implicit-curve samples
};

/// Sample of a circle of SU4 fixed points.
std::vector<ParamPoint<double>> sample_circle(const FixedCircle& c, std::size_t n);

FixedPointSet fixed_points(Symmetry s, std::size_t curve_samples = 512);

/// Implicit curve A B^6 - B^7 + 2A^6 B - 8A^6 + 2B^6 = 0 and its R'.
double family_curve(double A, double B);
double family_radius(double A, double B);
/// Positive A on the curve with 4A^6 > B^6, polished by Newton; nullopt if none.
std::optional<double> family_curve_solve(double B);

}  // namespace g2lap
