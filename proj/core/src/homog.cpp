#include "g2lap/homog.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "g2lap/lie_models.hpp"

namespace g2lap {

Symmetry parse_symmetry(std::string_view name) {
  if (name == "spin7") return Symmetry::Spin7;
  if (name == "su4") return Symmetry::SU4;
  if (name == "sp2sp1") return Symmetry::Sp2Sp1;
  if (name == "sp2u1") return Symmetry::Sp2U1;
  throw std::invalid_argument("unknown symmetry '" + std::string(name) + "'");
}

std::string_view symmetry_name(Symmetry s) {
  switch (s) {
    case Symmetry::Spin7: return "spin7";
    case Symmetry::SU4: return "su4";
    case Symmetry::Sp2Sp1: return "sp2sp1";
    case Symmetry::Sp2U1: return "sp2u1";
  }
  return "?";
}

void BracketTable::set(int i, int j, const std::array<Rational, kDim>& v) {
  c_[i - 1][j - 1] = v;
  for (int k = 0; k < kDim; ++k) c_[j - 1][i - 1][k] = -v[k];
  if (i == j)
    for (int k = 0; k < kDim; ++k)
      if (sgn(v[k]) != 0) throw std::invalid_argument("nonzero self-bracket");
}

bool BracketTable::antisymmetric() const {
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j)
      for (int k = 0; k < kDim; ++k)
        if (c_[i][j][k] != -c_[j][i][k]) return false;
  return true;
}

namespace {

using RForm = KForm<Rational>;

RForm e(std::initializer_list<int> idx, long c = 1) { return RForm::basis(idx, Rational(c)); }

RForm omega() { return e({2, 3}) + e({4, 5}) + e({6, 7}); }
RForm omega1() { return e({4, 5}) + e({6, 7}); }
RForm v_real() { return e({2, 4, 6}) - e({2, 5, 7}) - e({3, 4, 7}) - e({3, 5, 6}); }
RForm v_imag() { return e({3, 4, 6}) - e({3, 5, 7}) + e({2, 4, 7}) + e({2, 5, 6}); }
RForm phi0() { return wedge(e({1}), omega()) + v_real(); }

template <class M, std::size_t N, class Project>
BracketTable brackets_from(const std::array<M, N>& basis, Project project) {
  BracketTable t;
  for (int i = 1; i <= kDim; ++i)
    for (int j = i + 1; j <= kDim; ++j)
      t.set(i, j, project(commutator(basis[static_cast<std::size_t>(i - 1)], basis[static_cast<std::size_t>(j - 1)])));
  return t;
}

template <class M, std::size_t N, class Project>
RationalMatrix7 ad_matrix(const M& h, const std::array<M, N>& basis, Project project) {
  RationalMatrix7 a{};
  for (int j = 0; j < kDim; ++j) {
    const auto col = project(commutator(h, basis[static_cast<std::size_t>(j)]));
    for (int k = 0; k < kDim; ++k) a[k][j] = col[k];
  }
  return a;
}

void fill_basis4(SymmetrySpace& s) {
  const auto g = unit_metric<Rational>(s.blocks);
  s.basis4.clear();
  for (const auto& b : s.basis3) s.basis4.push_back(hodge_star(b, g, s.blocks));
}

SymmetrySpace make_spin7() {
  SymmetrySpace s;
  s.name = Symmetry::Spin7;
  s.blocks = BlockStructure::whole();
  s.basis3 = {phi0()};
  s.basis3_labels = {"phi0"};
  fill_basis4(s);
  return s;
}

SymmetrySpace make_su4() {
  SymmetrySpace s;
  s.name = Symmetry::SU4;
  s.blocks = BlockStructure({{"m1", 1, 1}, {"m6", 2, 7}});
  const auto basis = su4_model::m_basis();
  s.brackets = brackets_from(basis, su4_model::project);
  s.basis3 = {wedge(e({1}), omega()), v_real(), v_imag()};
  s.basis3_labels = {"e1^omega", "V_R", "V_I"};
  for (const auto& h : su4_model::isotropy_basis())
    s.isotropy_generators.push_back(ad_matrix(h, basis, su4_model::project));
  fill_basis4(s);
  return s;
}

SymmetrySpace make_sp2u1() {
  SymmetrySpace s;
  s.name = Symmetry::Sp2U1;
  s.blocks = BlockStructure({{"m1", 1, 1}, {"m2", 2, 3}, {"m4", 4, 7}});
  const auto basis = sp2_model::m_basis();
  s.brackets = brackets_from(basis, sp2_model::project);
  s.basis3 = {e({1, 2, 3}), wedge(e({1}), omega1()), v_real(), v_imag()};
  s.basis3_labels = {"e1^e23", "e1^omega1", "V_R", "V_I"};
  for (const auto& h : sp2_model::isotropy_basis_u1())
    s.isotropy_generators.push_back(ad_matrix(h, basis, sp2_model::project));
  fill_basis4(s);
  return s;
}

SymmetrySpace make_sp2sp1() {
  SymmetrySpace s;
  s.name = Symmetry::Sp2Sp1;
  s.blocks = BlockStructure({{"m3", 1, 3}, {"m4", 4, 7}});
  const auto basis = sp2_model::m_basis();
  s.brackets = brackets_from(basis, sp2_model::project);
  s.basis3 = {e({1, 2, 3}), wedge(e({1}), omega1()) + v_real()};
  s.basis3_labels = {"e123", "e1^omega1+V_R"};
  for (const auto& h : sp2_model::isotropy_basis_sp1())
    s.isotropy_generators.push_back(ad_matrix(h, basis, sp2_model::project));
  fill_basis4(s);
  return s;
}

}  // namespace

const SymmetrySpace& preset(Symmetry s) {
  static const SymmetrySpace spin7 = make_spin7();
  static const SymmetrySpace su4 = make_su4();
  static const SymmetrySpace sp2sp1 = make_sp2sp1();
  static const SymmetrySpace sp2u1 = make_sp2u1();
  switch (s) {
    case Symmetry::Spin7: return spin7;
    case Symmetry::SU4: return su4;
    case Symmetry::Sp2Sp1: return sp2sp1;
    case Symmetry::Sp2U1: return sp2u1;
  }
  throw std::invalid_argument("unknown symmetry");
}

template <Scalar T>
double ParamPoint<T>::alpha() const {
  double a = std::atan2(to_double(sin_alpha), to_double(cos_alpha));
  if (a < 0) a += 2 * std::numbers::pi;
  return a;
}

template struct ParamPoint<double>;
template struct ParamPoint<Rational>;

std::size_t coordinate_count(Symmetry s) {
  switch (s) {
    case Symmetry::Spin7: return 1;
    case Symmetry::SU4: return 3;
    case Symmetry::Sp2Sp1: return 2;
    case Symmetry::Sp2U1: return 4;
  }
  return 0;
}

ParamPoint<double> make_point(Symmetry s, std::span<const double> c) {
  if (c.size() != coordinate_count(s))
    throw std::invalid_argument(std::string(symmetry_name(s)) + " expects " +
                                std::to_string(coordinate_count(s)) + " coordinates");
  ParamPoint<double> p;
  p.symmetry = s;
  switch (s) {
    case Symmetry::Spin7: p.A = c[0]; break;
    case Symmetry::SU4:
      p.A = c[0];
      p.R = c[1];
      p.cos_alpha = std::cos(c[2]);
      p.sin_alpha = std::sin(c[2]);
      break;
    case Symmetry::Sp2Sp1:
      p.A = c[0];
      p.B = c[1];
      break;
    case Symmetry::Sp2U1:
      p.A = c[0];
      p.B = c[1];
      p.R = c[2];
      p.cos_alpha = std::cos(c[3]);
      p.sin_alpha = std::sin(c[3]);
      break;
  }
  return p;
}

std::vector<double> coordinates(const ParamPoint<double>& p) {
  switch (p.symmetry) {
    case Symmetry::Spin7: return {p.A};
    case Symmetry::SU4: return {p.A, p.R, p.alpha()};
    case Symmetry::Sp2Sp1: return {p.A, p.B};
    case Symmetry::Sp2U1: return {p.A, p.B, p.R, p.alpha()};
  }
  return {};
}

template <Scalar T>
bool is_positive(const ParamPoint<T>& p) {
  switch (p.symmetry) {
    case Symmetry::Spin7: return sign_of(p.A) != 0;
    case Symmetry::SU4: return sign_of(p.A) != 0 && sign_of(p.R) > 0;
    case Symmetry::Sp2Sp1: return sign_of(p.A) * sign_of(p.B) > 0;
    case Symmetry::Sp2U1: return sign_of(p.A) * sign_of(p.B) > 0 && sign_of(p.R) > 0;
  }
  return false;
}

template <Scalar T>
std::vector<T> chart_coefficients(const ParamPoint<T>& p) {
  const T a3 = ipow(p.A, 3), b3 = ipow(p.B, 3), r3 = ipow(p.R, 3);
  switch (p.symmetry) {
    case Symmetry::Spin7: return {a3};
    case Symmetry::SU4: return {a3, T(r3 * p.cos_alpha), T(r3 * p.sin_alpha)};
    case Symmetry::Sp2Sp1: return {a3, b3};
    case Symmetry::Sp2U1: return {a3, b3, T(r3 * p.cos_alpha), T(r3 * p.sin_alpha)};
  }
  return {};
}

template <Scalar T>
KForm<T> combine(const SymmetrySpace& s, std::span<const T> coefficients) {
  if (coefficients.size() != s.dimension()) throw std::invalid_argument("coefficient count mismatch");
  KForm<T> r(3);
  for (std::size_t k = 0; k < s.dimension(); ++k) r += coefficients[k] * s.basis3[k].template cast<T>();
  return r;
}

template <Scalar T>
KForm<T> to_form(const ParamPoint<T>& p) {
  const auto c = chart_coefficients(p);
  return combine<T>(preset(p.symmetry), c);
}

template <Scalar T>
std::vector<T> project_to_basis(const KForm<T>& a, const SymmetrySpace& s, double eps) {
  if (a.degree() != 3) throw DegreeError("basis projection needs a 3-form");
  // basis3 elements have disjoint monomial supports in every preset
  std::vector<T> out;
  KForm<T> residual = a;
  for (const auto& b : s.basis3) {
    T num(0), den(0);
    for (const auto& [key, c] : b.terms()) {
      num += a.coefficient(key) * from_rational<T>(c);
      den += from_rational<T>(c) * from_rational<T>(c);
    }
    T coeff = num / den;
    out.push_back(coeff);
    residual -= coeff * b.template cast<T>();
  }
  const double scale = std::max(1.0, a.max_abs());
  if (!approx_equal(residual, KForm<T>(3), eps * scale))
    throw NotInvariant("form is not in the span of the invariant basis");
  return out;
}

ParamPoint<double> point_from_coefficients(Symmetry s, std::span<const double> c) {
  if (c.size() != preset(s).dimension()) throw std::invalid_argument("coefficient count mismatch");
  ParamPoint<double> p;
  p.symmetry = s;
  auto set_circle = [&p](double re, double im) {
    const double q = std::hypot(re, im);
    p.R = std::cbrt(q);
    if (q > 0) {
      p.cos_alpha = re / q;
      p.sin_alpha = im / q;
    }
  };
  switch (s) {
    case Symmetry::Spin7: p.A = std::cbrt(c[0]); break;
    case Symmetry::SU4:
      p.A = std::cbrt(c[0]);
      set_circle(c[1], c[2]);
      break;
    case Symmetry::Sp2Sp1:
      p.A = std::cbrt(c[0]);
      p.B = std::cbrt(c[1]);
      break;
    case Symmetry::Sp2U1:
      p.A = std::cbrt(c[0]);
      p.B = std::cbrt(c[1]);
      set_circle(c[2], c[3]);
      break;
  }
  return p;
}

ParamPoint<double> from_form(const KForm<double>& phi, const SymmetrySpace& s, double eps) {
  const auto c = project_to_basis(phi, s, eps);
  return point_from_coefficients(s.name, c);
}

template <Scalar T>
KForm<T> exterior_derivative(const KForm<T>& a, const SymmetrySpace& s) {
  if (!s.brackets) throw UnsupportedSymmetry(std::string(symmetry_name(s.name)) + " has no bracket table");
  const int k = a.degree();
  if (k >= kDim) throw DegreeError("exterior derivative of a 7-form");
  if (k == 0) return KForm<T>(1);
  const BracketTable& br = *s.brackets;

  struct Entry {
    int i, j, m;
    T c;
  };
  std::vector<Entry> nonzero;
  for (int i = 1; i <= kDim; ++i)
    for (int j = i + 1; j <= kDim; ++j)
      for (int m = 1; m <= kDim; ++m)
        if (sgn(br(i, j)[m - 1]) != 0) nonzero.push_back({i, j, m, from_rational<T>(br(i, j)[m - 1])});

  KForm<T> r(k + 1);
  std::vector<int> args(static_cast<std::size_t>(k));
  for (unsigned mask = 0; mask < 128u; ++mask) {
    const MultiIndex key = MultiIndex::from_mask(static_cast<std::uint8_t>(mask));
    if (key.degree() != k + 1) continue;
    const auto x = key.indices();
    T total(0);
    for (const Entry& en : nonzero) {
      if (!key.contains(en.i) || !key.contains(en.j)) continue;
      const int pi = key.position(en.i), pj = key.position(en.j);
      args[0] = en.m;
      std::size_t n = 1;
      for (int q = 0; q <= k; ++q)
        if (q != pi && q != pj) args[n++] = x[static_cast<std::size_t>(q)];
      T v = evaluate(a, std::span<const int>(args.data(), args.size())) * en.c;
      if ((pi + pj) % 2 == 0)
        total += v;
      else
        total -= v;
    }
    r.add_term(key, total);
  }
  return r;
}

template <Scalar T>
KForm<T> isotropy_action(const RationalMatrix7& gen, const KForm<T>& a) {
  KForm<T> r(a.degree());
  std::vector<int> idx;
  for (const auto& [key, c] : a.terms()) {
    idx = key.indices();
    for (std::size_t p = 0; p < idx.size(); ++p) {
      const int row = idx[p];
      for (int j = 1; j <= kDim; ++j) {
        const Rational& g = gen[static_cast<std::size_t>(row - 1)][static_cast<std::size_t>(j - 1)];
        if (sgn(g) == 0) continue;
        auto moved = idx;
        moved[p] = j;
        auto [nk, sign] = sort_indices(moved);
        if (sign == 0) continue;
        T v = c * from_rational<T>(g);
        r.add_term(nk, sign > 0 ? T(-v) : v);
      }
    }
  }
  return r;
}

bool verify_invariance(const KForm<Rational>& a, const SymmetrySpace& s) {
  if (s.isotropy_generators.empty())
    throw MissingGenerators(std::string(symmetry_name(s.name)) + " has no isotropy generators");
  for (const auto& g : s.isotropy_generators)
    if (!isotropy_action(g, a).is_zero()) return false;
  return true;
}

const SymmetrySpace& derivative_space(Symmetry s) {
  return s == Symmetry::Spin7 ? preset(Symmetry::SU4) : preset(s);
}

template <Scalar T>
KForm<T> to_derivative_frame(const KForm<T>& a, Symmetry s) {
  if (s != Symmetry::Spin7) return a;
  std::array<T, kDim> scale;
  scale.fill(T(1));
  scale[0] = T(3);
  return a.rescaled(scale);
}

template <Scalar T>
KForm<T> from_derivative_frame(const KForm<T>& a, Symmetry s) {
  if (s != Symmetry::Spin7) return a;
  std::array<T, kDim> scale;
  scale.fill(T(1));
  scale[0] = from_rational<T>(frac(1, 3));
  return a.rescaled(scale);
}

#define G2LAP_INSTANTIATE(T)                                                              \
  template bool is_positive(const ParamPoint<T>&);                                        \
  template std::vector<T> chart_coefficients(const ParamPoint<T>&);                      \
  template KForm<T> combine(const SymmetrySpace&, std::span<const T>);                    \
  template KForm<T> to_form(const ParamPoint<T>&);                                        \
  template std::vector<T> project_to_basis(const KForm<T>&, const SymmetrySpace&, double); \
  template KForm<T> exterior_derivative(const KForm<T>&, const SymmetrySpace&);           \
  template KForm<T> isotropy_action(const RationalMatrix7&, const KForm<T>&);             \
  template KForm<T> to_derivative_frame(const KForm<T>&, Symmetry);                      \
  template KForm<T> from_derivative_frame(const KForm<T>&, Symmetry);

G2LAP_INSTANTIATE(double)
G2LAP_INSTANTIATE(Rational)

#undef G2LAP_INSTANTIATE

}  // namespace g2lap
