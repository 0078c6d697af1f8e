#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "g2lap/exterior.hpp"
#include "g2lap/g2core.hpp"

namespace g2lap {

enum class Symmetry { Spin7, SU4, Sp2Sp1, Sp2U1 };

inline constexpr std::array<Symmetry, 4> kAllSymmetries{Symmetry::Spin7, Symmetry::SU4, Symmetry::Sp2Sp1,
                                                        Symmetry::Sp2U1};

/// "spin7" | "su4" | "sp2sp1" | "sp2u1"
Symmetry parse_symmetry(std::string_view name);
std::string_view symmetry_name(Symmetry s);

using RationalMatrix7 = std::array<std::array<Rational, kDim>, kDim>;

/// Structure constants of [e_i, e_j]_m = sum_k c_ij^k e_k (1-based access).
class BracketTable {
 public:
  BracketTable() = default;
  const std::array<Rational, kDim>& operator()(int i, int j) const { return c_[i - 1][j - 1]; }
  void set(int i, int j, const std::array<Rational, kDim>& v);
  bool antisymmetric() const;

 private:
  std::array<std::array<std::array<Rational, kDim>, kDim>, kDim> c_{};
};

struct SymmetrySpace {
  Symmetry name = Symmetry::SU4;
  BlockStructure blocks = BlockStructure::whole();
  std::optional<BracketTable> brackets;
  std::vector<KForm<Rational>> basis3;
  std::vector<std::string> basis3_labels;
  std::vector<KForm<Rational>> basis4;  // *basis3 at the unit metric
  std::vector<RationalMatrix7> isotropy_generators;

  std::size_t dimension() const { return basis3.size(); }
};

/// Immutable preset, built once.
const SymmetrySpace& preset(Symmetry s);

/// Point of a symmetry chart. Unused slots stay at their defaults. The angle
/// is stored through cos/sin so exact points can sit on rational circle points.
template <Scalar T>
struct ParamPoint {
  Symmetry symmetry = Symmetry::SU4;
  T A = T(1);
  T B = T(1);
  T R = T(1);
  T cos_alpha = T(1);
  T sin_alpha = T(0);

  double alpha() const;
};

/// Builds a float point from its chart coordinates:
/// Spin7 (A), SU4 (A,R,alpha), Sp2Sp1 (A,B), Sp2U1 (A,B,R,alpha).
ParamPoint<double> make_point(Symmetry s, std::span<const double> coords);
std::vector<double> coordinates(const ParamPoint<double>& p);
std::size_t coordinate_count(Symmetry s);

template <Scalar T>
bool is_positive(const ParamPoint<T>& p);

/// Coefficients of the point's form in basis3.
template <Scalar T>
std::vector<T> chart_coefficients(const ParamPoint<T>& p);

template <Scalar T>
KForm<T> combine(const SymmetrySpace& s, std::span<const T> coefficients);

template <Scalar T>
KForm<T> to_form(const ParamPoint<T>& p);

/// Least-squares coefficients of a in basis3; NotInvariant if the residual exceeds eps.
template <Scalar T>
std::vector<T> project_to_basis(const KForm<T>& a, const SymmetrySpace& s, double eps = 1e-9);

/// Inverse chart on basis3 coefficients: signed cube roots and atan2.
ParamPoint<double> point_from_coefficients(Symmetry s, std::span<const double> coefficients);

ParamPoint<double> from_form(const KForm<double>& phi, const SymmetrySpace& s, double eps = 1e-9);

template <Scalar T>
KForm<T> exterior_derivative(const KForm<T>& a, const SymmetrySpace& s);

/// Derivation action of an isotropy matrix: e^k -> -sum_j A_kj e^j.
template <Scalar T>
KForm<T> isotropy_action(const RationalMatrix7& generator, const KForm<T>& a);

bool verify_invariance(const KForm<Rational>& a, const SymmetrySpace& s);

/// Space in which d and * are evaluated. Spin7 has no bracket table and is
/// carried inside the SU4 presentation through e^1 = f^1 / 3.
const SymmetrySpace& derivative_space(Symmetry s);

template <Scalar T>
KForm<T> to_derivative_frame(const KForm<T>& a, Symmetry s);
template <Scalar T>
KForm<T> from_derivative_frame(const KForm<T>& a, Symmetry s);

}  // namespace g2lap
