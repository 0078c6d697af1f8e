#include "g2lap/g2core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace g2lap {

BlockStructure::BlockStructure(std::vector<Block> blocks) : blocks_(std::move(blocks)) {
  int next = 1;
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    const Block& blk = blocks_[b];
    if (blk.first != next || blk.last < blk.first || blk.last > kDim)
      throw std::invalid_argument("blocks must partition 1..7 in order");
    for (int i = blk.first; i <= blk.last; ++i) owner_[static_cast<std::size_t>(i - 1)] = b;
    next = blk.last + 1;
  }
  if (next != kDim + 1) throw std::invalid_argument("blocks must cover 1..7");
}

BlockStructure BlockStructure::whole() { return BlockStructure({{"m7", 1, 7}}); }

BlockStructure BlockStructure::singletons() {
  std::vector<Block> b;
  for (int i = 1; i <= kDim; ++i) b.push_back({"e" + std::to_string(i), i, i});
  return BlockStructure(std::move(b));
}

std::vector<int> BlockStructure::block_degrees(const MultiIndex& key) const {
  std::vector<int> out(blocks_.size(), 0);
  for (int i : key.indices()) ++out[block_of(i)];
  return out;
}

std::string to_string(SignatureClass c) {
  switch (c) {
    case SignatureClass::Positive: return "Positive";
    case SignatureClass::Indefinite34: return "Indefinite34";
    case SignatureClass::Degenerate: return "Degenerate";
  }
  return "?";
}

template <Scalar T>
std::array<std::array<T, kDim>, kDim> bilinear_matrix(const KForm<T>& phi) {
  if (phi.degree() != 3) throw DegreeError("induced bilinear form needs a 3-form");
  std::array<KForm<T>, kDim> contracted;
  std::array<KForm<T>, kDim> with_phi;
  for (int i = 1; i <= kDim; ++i) {
    contracted[i - 1] = interior(i, phi);
    with_phi[i - 1] = wedge(contracted[i - 1], phi);
  }
  std::array<std::array<T, kDim>, kDim> b{};
  const T sixth = from_rational<T>(frac(1, 6));
  for (int i = 0; i < kDim; ++i) {
    for (int j = i; j < kDim; ++j) {
      T v = top_coefficient(wedge(contracted[j], with_phi[i])) * sixth;
      b[i][j] = v;
      b[j][i] = v;
    }
  }
  return b;
}

template <Scalar T>
MetricSignatureReport<T> induced_bilinear(const KForm<T>& phi, const BlockStructure& blocks,
                                          double eps) {
  const auto b = bilinear_matrix(phi);
  double scale = 0.0;
  for (int i = 0; i < kDim; ++i) scale = std::max(scale, std::abs(to_double(b[i][i])));
  const double tol = std::same_as<T, double> ? eps * std::max(scale, 1.0) : 0.0;

  for (int i = 0; i < kDim; ++i)
    for (int j = i + 1; j < kDim; ++j)
      if (!is_zero(b[i][j], tol))
        throw NonDiagonalError("bilinear form has off-diagonal entry (" + std::to_string(i + 1) +
                               "," + std::to_string(j + 1) + ")");
  for (const Block& blk : blocks.blocks())
    for (int i = blk.first + 1; i <= blk.last; ++i)
      if (!is_zero(T(b[i - 1][i - 1] - b[blk.first - 1][blk.first - 1]), tol))
        throw NonDiagonalError("bilinear form is not scalar on block " + blk.name);

  MetricSignatureReport<T> report;
  for (int i = 0; i < kDim; ++i) report.bilinear_diagonal[i] = b[i][i];

  T det(1);
  int positives = 0, negatives = 0;
  for (int i = 0; i < kDim; ++i) {
    det *= b[i][i];
    const int s = sign_of(b[i][i]);
    positives += s > 0;
    negatives += s < 0;
  }
  bool degenerate = positives + negatives < kDim;
  if constexpr (std::same_as<T, double>) {
    for (int i = 0; i < kDim; ++i)
      if (std::abs(b[i][i]) < 1e-12 * scale) degenerate = true;
  }
  if (degenerate) {
    report.classification = SignatureClass::Degenerate;
    return report;
  }

  int vsign;
  if (negatives == 0) {
    vsign = 1;
    report.classification = SignatureClass::Positive;
  } else if (positives == 0) {
    vsign = -1;
    report.classification = SignatureClass::Positive;
  } else if (positives == 3 && negatives == 4) {
    vsign = 1;
    report.classification = SignatureClass::Indefinite34;
  } else if (positives == 4 && negatives == 3) {
    vsign = -1;
    report.classification = SignatureClass::Indefinite34;
  } else {
    throw std::logic_error("bilinear form of a 3-form with impossible signature");
  }

  T v = real_root(abs_value(det), 9);
  if (vsign < 0) v = -v;
  DiagonalMetric<T> g;
  g.orientation = vsign;
  g.volume = v;
  for (const Block& blk : blocks.blocks()) g.block_coeffs.push_back(T(b[blk.first - 1][blk.first - 1] / v));
  report.metric = std::move(g);
  return report;
}

template <Scalar T>
DiagonalMetric<T> metric_of(const KForm<T>& phi, const BlockStructure& blocks, double eps) {
  auto report = induced_bilinear(phi, blocks, eps);
  if (report.classification == SignatureClass::Degenerate) throw DegenerateForm("3-form is degenerate");
  if (report.classification != SignatureClass::Positive)
    throw NotPositive("3-form induces an indefinite metric");
  return *report.metric;
}

template <Scalar T>
KForm<T> hodge_star(const KForm<T>& a, const DiagonalMetric<T>& g, const BlockStructure& blocks) {
  if (g.block_coeffs.size() != blocks.count()) throw std::invalid_argument("metric/block size mismatch");
  if (!g.positive_definite()) throw NotPositive("Hodge star needs a positive-definite metric");
  KForm<T> r(kDim - a.degree());
  for (const auto& [key, c] : a.terms()) {
    const MultiIndex comp = key.complement();
    const auto l = blocks.block_degrees(key);
    T squared(1);
    for (std::size_t b = 0; b < blocks.count(); ++b)
      squared *= ipow(g.block_coeffs[b], blocks[b].size() - 2 * l[b]);
    T factor = real_root(squared, 2);
    if (merge_sign(key, comp) * g.orientation < 0) factor = -factor;
    r.add_term(comp, T(factor * c));
  }
  return r;
}

template <Scalar T>
DiagonalMetric<T> unit_metric(const BlockStructure& blocks) {
  DiagonalMetric<T> g;
  g.block_coeffs.assign(blocks.count(), T(1));
  return g;
}

template <Scalar T>
T form_inner(const KForm<T>& a, const KForm<T>& b, const DiagonalMetric<T>& g,
             const BlockStructure& blocks) {
  if (a.degree() != b.degree()) throw DegreeError("inner product of forms of different degree");
  T sum(0);
  for (const auto& [key, c] : a.terms()) {
    auto it = b.terms().find(key);
    if (it == b.terms().end()) continue;
    const auto l = blocks.block_degrees(key);
    T w(1);
    for (std::size_t k = 0; k < blocks.count(); ++k) w *= ipow(g.block_coeffs[k], -l[k]);
    sum += c * it->second * w;
  }
  return sum;
}

template <Scalar T>
std::pair<DiagonalMetric<T>, DiagonalMetric<T>> scaling_check(const KForm<T>& phi, const T& c,
                                                              const BlockStructure& blocks) {
  auto first = induced_bilinear(phi, blocks);
  auto second = induced_bilinear(KForm<T>(c * phi), blocks);
  if (!first.metric || !second.metric) throw DegenerateForm("scaling check on a degenerate form");
  return {*first.metric, *second.metric};
}

#define G2LAP_INSTANTIATE(T)                                                                         \
  template std::array<std::array<T, kDim>, kDim> bilinear_matrix(const KForm<T>&);                  \
  template MetricSignatureReport<T> induced_bilinear(const KForm<T>&, const BlockStructure&, double); \
  template DiagonalMetric<T> metric_of(const KForm<T>&, const BlockStructure&, double);             \
  template KForm<T> hodge_star(const KForm<T>&, const DiagonalMetric<T>&, const BlockStructure&);   \
  template DiagonalMetric<T> unit_metric(const BlockStructure&);                                    \
  template T form_inner(const KForm<T>&, const KForm<T>&, const DiagonalMetric<T>&,                 \
                        const BlockStructure&);                                                     \
  template std::pair<DiagonalMetric<T>, DiagonalMetric<T>> scaling_check(const KForm<T>&, const T&, \
                                                                         const BlockStructure&);

G2LAP_INSTANTIATE(double)
G2LAP_INSTANTIATE(Rational)

#undef G2LAP_INSTANTIATE

}  // namespace g2lap
