#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "g2lap/exterior.hpp"

namespace g2lap {

struct Block {
  std::string name;
  int first = 1;  // inclusive, 1-based
  int last = 1;   // inclusive
  int size() const { return last - first + 1; }
};

/// Ordered partition of {1..7} into contiguous index ranges.
class BlockStructure {
 public:
  explicit BlockStructure(std::vector<Block> blocks);

  static BlockStructure whole();       // one block 1..7
  static BlockStructure singletons();  // seven 1-dimensional blocks

  const std::vector<Block>& blocks() const { return blocks_; }
  std::size_t count() const { return blocks_.size(); }
  const Block& operator[](std::size_t b) const { return blocks_[b]; }
  std::size_t block_of(int index) const { return owner_[static_cast<std::size_t>(index - 1)]; }
  /// Number of indices of `key` lying in each block.
  std::vector<int> block_degrees(const MultiIndex& key) const;

 private:
  std::vector<Block> blocks_;
  std::array<std::size_t, kDim> owner_{};
};

/// Metric c_b * sum_{i in b} e^i (x) e^i with an orientation and signed volume.
template <Scalar T>
struct DiagonalMetric {
  std::vector<T> block_coeffs;
  int orientation = 1;
  T volume = T(1);  // coefficient of dvol on e^{1..7}

  bool positive_definite() const {
    for (const auto& c : block_coeffs)
      if (sign_of(c) <= 0) return false;
    return true;
  }
  T coefficient_at(int index, const BlockStructure& blocks) const {
    return block_coeffs[blocks.block_of(index)];
  }
};

enum class SignatureClass { Positive, Indefinite34, Degenerate };
std::string to_string(SignatureClass c);

template <Scalar T>
struct MetricSignatureReport {
  SignatureClass classification = SignatureClass::Degenerate;
  std::optional<DiagonalMetric<T>> metric;
  std::array<T, kDim> bilinear_diagonal{};  // b_ii as 7-form coefficients
};

/// b_ij = coefficient of (1/6) i_i phi ^ i_j phi ^ phi on e^{1..7}, full 7x7.
template <Scalar T>
std::array<std::array<T, kDim>, kDim> bilinear_matrix(const KForm<T>& phi);

/// Classifies phi and recovers its metric. Off-diagonal or within-block
/// mismatches beyond eps (relative for doubles) raise NonDiagonalError.
template <Scalar T>
MetricSignatureReport<T> induced_bilinear(const KForm<T>& phi, const BlockStructure& blocks,
                                          double eps = 1e-9);

/// Metric of a positive form; DegenerateForm or NotPositive otherwise.
template <Scalar T>
DiagonalMetric<T> metric_of(const KForm<T>& phi, const BlockStructure& blocks, double eps = 1e-9);

/// Hodge star of a block-diagonal positive-definite metric.
template <Scalar T>
KForm<T> hodge_star(const KForm<T>& a, const DiagonalMetric<T>& g, const BlockStructure& blocks);

/// Unit metric with positive orientation.
template <Scalar T>
DiagonalMetric<T> unit_metric(const BlockStructure& blocks);

/// g(a, b) for forms of the same degree.
template <Scalar T>
T form_inner(const KForm<T>& a, const KForm<T>& b, const DiagonalMetric<T>& g,
             const BlockStructure& blocks);

/// Metrics of phi and c*phi.
template <Scalar T>
std::pair<DiagonalMetric<T>, DiagonalMetric<T>> scaling_check(const KForm<T>& phi, const T& c,
                                                              const BlockStructure& blocks);

}  // namespace g2lap
