#include "g2lap/laplace.hpp"

#include <algorithm>
#include <cmath>

namespace g2lap {

namespace {

template <Scalar T>
KForm<T> frame_form(const ParamPoint<T>& p) {
  return to_derivative_frame(to_form(p), p.symmetry);
}

template <Scalar T>
KForm<T> codifferential(const KForm<T>& a, const DiagonalMetric<T>& g, const SymmetrySpace& frame) {
  if (a.degree() == 0) return KForm<T>(0);
  KForm<T> r = hodge_star(exterior_derivative(hodge_star(a, g, frame.blocks), frame), g, frame.blocks);
  if (a.degree() % 2 == 1) r *= T(-1);
  return r;
}

template <Scalar T>
bool negligible(const KForm<T>& a, double scale, double eps) {
  if constexpr (std::same_as<T, Rational>) {
    (void)scale;
    (void)eps;
    return a.is_zero();
  } else {
    return a.max_abs() <= eps * std::max(scale, 1.0);
  }
}

}  // namespace

std::vector<std::size_t> coclosed_indices(Symmetry s) {
  // coclosedness of invariant forms does not depend on the invariant metric
  const SymmetrySpace& space = preset(s);
  const SymmetrySpace& frame = derivative_space(s);
  const auto unit = unit_metric<Rational>(frame.blocks);
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < space.dimension(); ++k) {
    const auto framed = to_derivative_frame(space.basis3[k], s);
    if (exterior_derivative(hodge_star(framed, unit, frame.blocks), frame).is_zero()) out.push_back(k);
  }
  return out;
}

template <Scalar T>
DiagonalMetric<T> metric_at(const ParamPoint<T>& p) {
  if (!is_positive(p)) throw NotPositive(std::string(symmetry_name(p.symmetry)) + " point is not positive");
  return metric_of(frame_form(p), derivative_space(p.symmetry).blocks);
}

template <Scalar T>
KForm<T> hodge_laplacian(const KForm<T>& a, const DiagonalMetric<T>& g, const SymmetrySpace& frame) {
  KForm<T> r(a.degree());
  if (a.degree() > 0) r += exterior_derivative(codifferential(a, g, frame), frame);
  if (a.degree() < kDim) r += codifferential(exterior_derivative(a, frame), g, frame);
  return r;
}

template <Scalar T>
LaplacianMatrix<T> laplacian_matrix(const ParamPoint<T>& p) {
  const SymmetrySpace& space = preset(p.symmetry);
  const SymmetrySpace& frame = derivative_space(p.symmetry);
  LaplacianMatrix<T> out;
  out.symmetry = p.symmetry;
  out.metric = metric_at(p);
  const std::size_t n = space.dimension();
  out.matrix = DenseMatrix<T>(n, n);
  out.gram = DenseMatrix<T>(n, n);
  std::vector<KForm<T>> framed;
  for (const auto& b : space.basis3) framed.push_back(to_derivative_frame(b.template cast<T>(), p.symmetry));
  for (std::size_t k = 0; k < n; ++k) {
    const KForm<T> image = from_derivative_frame(hodge_laplacian(framed[k], out.metric, frame), p.symmetry);
    const auto col = project_to_basis(image, space);
    for (std::size_t r = 0; r < n; ++r) out.matrix(r, k) = col[r];
    for (std::size_t l = 0; l < n; ++l) out.gram(k, l) = form_inner(framed[k], framed[l], out.metric, frame.blocks);
  }
  return out;
}

template <Scalar T>
std::vector<T> laplacian_coefficients(const ParamPoint<T>& p) {
  const auto g = metric_at(p);
  const SymmetrySpace& frame = derivative_space(p.symmetry);
  const KForm<T> image = from_derivative_frame(hodge_laplacian(frame_form(p), g, frame), p.symmetry);
  return project_to_basis(image, preset(p.symmetry));
}

template <Scalar T>
KForm<T> g2_laplacian(const ParamPoint<T>& p) {
  const auto c = laplacian_coefficients(p);
  return combine<T>(preset(p.symmetry), c);
}

template <Scalar T>
std::vector<T> star_derivative_coefficients(const ParamPoint<T>& p) {
  const auto g = metric_at(p);
  const SymmetrySpace& frame = derivative_space(p.symmetry);
  const KForm<T> dphi = exterior_derivative(frame_form(p), frame);
  const KForm<T> image = from_derivative_frame(hodge_star(dphi, g, frame.blocks), p.symmetry);
  return project_to_basis(image, preset(p.symmetry));
}

template <Scalar T>
StarDerivativeMatrix<T> star_derivative_matrix(const ParamPoint<T>& p) {
  const SymmetrySpace& space = preset(p.symmetry);
  const SymmetrySpace& frame = derivative_space(p.symmetry);
  const auto g = metric_at(p);
  StarDerivativeMatrix<T> out;
  out.symmetry = p.symmetry;
  std::vector<KForm<T>> framed;
  for (const auto& b : space.basis3) framed.push_back(to_derivative_frame(b.template cast<T>(), p.symmetry));
  out.block = coclosed_indices(p.symmetry);
  const std::size_t n = out.block.size();
  out.matrix = DenseMatrix<T>(n, n);
  for (std::size_t col = 0; col < n; ++col) {
    const KForm<T> image = from_derivative_frame(
        hodge_star(exterior_derivative(framed[out.block[col]], frame), g, frame.blocks), p.symmetry);
    const auto coords = project_to_basis(image, space);
    for (std::size_t k = 0; k < coords.size(); ++k) {
      auto it = std::find(out.block.begin(), out.block.end(), k);
      if (it == out.block.end()) {
        if (!is_zero(coords[k], 1e-9 * std::max(1.0, std::abs(to_double(coords[k])))))
          throw NotCoclosed("*d maps the coclosed block outside itself");
        continue;
      }
      out.matrix(static_cast<std::size_t>(it - out.block.begin()), col) = coords[k];
    }
  }
  return out;
}

template <Scalar T>
TorsionReport torsion_type(const ParamPoint<T>& p, double eps) {
  const auto g = metric_at(p);
  const SymmetrySpace& frame = derivative_space(p.symmetry);
  const KForm<T> phi = frame_form(p);
  const KForm<T> star_phi = hodge_star(phi, g, frame.blocks);
  const KForm<T> dphi = exterior_derivative(phi, frame);
  const KForm<T> dstar = exterior_derivative(star_phi, frame);
  const double scale = std::max(phi.max_abs(), star_phi.max_abs());

  TorsionReport rep;
  rep.closed = negligible(dphi, scale, eps);
  rep.coclosed = negligible(dstar, scale, eps);

  T num(0), den(0);
  for (const auto& [key, c] : star_phi.terms()) {
    num += dphi.coefficient(key) * c;
    den += c * c;
  }
  if (sign_of(den) != 0) {
    const T tau = num / den;
    if (negligible(KForm<T>(dphi - tau * star_phi), std::max(scale, dphi.max_abs()), eps))
      rep.tau0 = to_double(tau);
  }
  return rep;
}

#define G2LAP_INSTANTIATE(T)                                                                        \
  template DiagonalMetric<T> metric_at(const ParamPoint<T>&);                                       \
  template KForm<T> hodge_laplacian(const KForm<T>&, const DiagonalMetric<T>&, const SymmetrySpace&); \
  template LaplacianMatrix<T> laplacian_matrix(const ParamPoint<T>&);                               \
  template std::vector<T> laplacian_coefficients(const ParamPoint<T>&);                             \
  template KForm<T> g2_laplacian(const ParamPoint<T>&);                                             \
  template std::vector<T> star_derivative_coefficients(const ParamPoint<T>&);                       \
  template StarDerivativeMatrix<T> star_derivative_matrix(const ParamPoint<T>&);                    \
  template TorsionReport torsion_type(const ParamPoint<T>&, double);

G2LAP_INSTANTIATE(double)
G2LAP_INSTANTIATE(Rational)

#undef G2LAP_INSTANTIATE

}  // namespace g2lap
