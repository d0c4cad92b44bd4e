#pragma once

// Bitmask view of a small finite group: element indices are bit positions.

#include <cstdint>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "oinfty/monoid.hpp"

namespace oinfty::detail {

struct MaskView {
  std::uint32_t n = 0;
  std::uint64_t all = 0;
  std::vector<std::uint64_t> up;                  // γ + sg(ω) for each γ
  std::vector<std::vector<std::uint32_t>> shift_index;  // per distinct weight value
  std::vector<std::size_t> tail_slots;            // slots of tail values
  std::vector<std::size_t> prefix_slots;          // slot of prefix weight i (0-based)

  std::uint64_t shift(std::uint64_t x, std::size_t slot) const;
  /// H_X for an invariant mask.
  std::uint64_t h(std::uint64_t x) const;
  bool invariant(std::uint64_t x) const;
};

/// SizeLimit when |Γ| exceeds `size_limit` or 62.
MaskView mask_view(const Semigroup& sg, std::size_t size_limit);

boost::dynamic_bitset<> to_bits(std::uint64_t mask, std::uint32_t n);
std::uint64_t to_mask(const boost::dynamic_bitset<>& bits);

}  // namespace oinfty::detail
