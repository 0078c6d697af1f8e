#include "g2lap/exterior.hpp"

#include <stdexcept>

namespace g2lap {

MultiIndex::MultiIndex(std::initializer_list<int> increasing) {
  int last = 0;
  for (int i : increasing) {
    if (i < 1 || i > kDim) throw std::invalid_argument("index outside 1..7");
    if (i <= last) throw std::invalid_argument("indices must be strictly increasing");
    mask_ = static_cast<std::uint8_t>(mask_ | (1u << (i - 1)));
    last = i;
  }
}

MultiIndex MultiIndex::from_mask(std::uint8_t mask) {
  if (mask & 0x80) throw std::invalid_argument("mask outside 1..7");
  MultiIndex m;
  m.mask_ = mask;
  return m;
}

std::vector<int> MultiIndex::indices() const {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(degree()));
  for (int i = 1; i <= kDim; ++i)
    if (contains(i)) out.push_back(i);
  return out;
}

std::strong_ordering MultiIndex::operator<=>(const MultiIndex& other) const {
  if (auto c = degree() <=> other.degree(); c != 0) return c;
  const unsigned diff = static_cast<unsigned>(mask_ ^ other.mask_);
  if (diff == 0) return std::strong_ordering::equal;
  // the tuple owning the smallest differing index comes first
  const unsigned lowest = diff & (~diff + 1u);
  return (mask_ & lowest) ? std::strong_ordering::less : std::strong_ordering::greater;
}

std::string MultiIndex::to_string() const {
  std::string s = "e";
  if (mask_ == 0) return "1";
  for (int i : indices()) s += static_cast<char>('0' + i);
  return s;
}

int merge_sign(MultiIndex a, MultiIndex b) {
  if (a.mask() & b.mask()) return 0;
  // count pairs (i in a, j in b) with i > j
  int inversions = 0;
  for (int j = 1; j <= kDim; ++j)
    if (b.contains(j)) inversions += std::popcount(static_cast<unsigned>(a.mask() >> j));
  return inversions % 2 == 0 ? 1 : -1;
}

std::pair<MultiIndex, int> sort_indices(std::span<const int> indices) {
  std::uint8_t mask = 0;
  int inversions = 0;
  for (std::size_t p = 0; p < indices.size(); ++p) {
    const int i = indices[p];
    if (i < 1 || i > kDim) throw std::invalid_argument("index outside 1..7");
    if ((mask >> (i - 1)) & 1u) return {MultiIndex{}, 0};
    inversions += std::popcount(static_cast<unsigned>(mask >> i));
    mask = static_cast<std::uint8_t>(mask | (1u << (i - 1)));
  }
  return {MultiIndex::from_mask(mask), inversions % 2 == 0 ? 1 : -1};
}

}  // namespace g2lap
