#include "oinfty/detail/finite.hpp"

#include <algorithm>
#include <bit>

#include "oinfty/error.hpp"

namespace oinfty::detail {

std::uint64_t MaskView::shift(std::uint64_t x, std::size_t slot) const {
  const auto& tr = shift_index[slot];
  std::uint64_t out = 0;
  while (x) {
    const int b = std::countr_zero(x);
    x &= x - 1;
    out |= std::uint64_t{1} << tr[b];
  }
  return out;
}

std::uint64_t MaskView::h(std::uint64_t x) const {
  std::uint64_t reached = 0;
  for (std::size_t s = 0; s < shift_index.size(); ++s) reached |= shift(x, s);
  std::uint64_t tails = 0;
  for (auto s : tail_slots) tails |= shift(x, s);
  return (x & ~reached) | tails;
}

bool MaskView::invariant(std::uint64_t x) const {
  std::uint64_t rest = x;
  while (rest) {
    const int b = std::countr_zero(rest);
    rest &= rest - 1;
    if ((up[b] & ~x) != 0) return false;
  }
  return true;
}

MaskView mask_view(const Semigroup& sg, std::size_t size_limit) {
  const auto& g = sg.group();
  if (!g.is_finite()) fail(ErrorKind::NotFinite, "enumeration needs a finite group, got " + g.to_string());
  const Int order = *g.order();
  if (order > size_limit || order > 62) {
    fail(ErrorKind::SizeLimit, "group " + g.to_string() + " has order " + order.str() + ", enumeration limit is " +
                                   std::to_string(std::min<std::size_t>(size_limit, 62)));
  }
  MaskView v;
  v.n = static_cast<std::uint32_t>(order);
  v.all = v.n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << v.n) - 1;
  const auto& values = sg.weights().distinct_values();
  for (std::size_t k = 0; k < values.size(); ++k) v.shift_index.push_back(sg.translation(k));

  auto slot_of = [&](const GroupElem& w) {
    return static_cast<std::size_t>(std::lower_bound(values.begin(), values.end(), w) - values.begin());
  };
  for (const auto& t : sg.weights().tail_values()) v.tail_slots.push_back(slot_of(t));
  for (const auto& p : sg.weights().prefix()) v.prefix_slots.push_back(slot_of(p));

  const std::uint64_t base = to_mask(sg.table());
  v.up.resize(v.n);
  for (std::uint32_t gamma = 0; gamma < v.n; ++gamma) {
    // γ + sg: translate the table of sg by γ using repeated weight steps
    std::uint64_t reach = std::uint64_t{1} << gamma;
    for (;;) {
      std::uint64_t next = reach;
      for (std::size_t s = 0; s < v.shift_index.size(); ++s) next |= v.shift(reach, s);
      if (next == reach) break;
      reach = next;
    }
    v.up[gamma] = reach;
  }
  if (std::popcount(v.up[0]) != std::popcount(base)) {
    fail(ErrorKind::InternalInvariantBroken, "closure table and saturation disagree on " + g.to_string());
  }
  return v;
}

boost::dynamic_bitset<> to_bits(std::uint64_t mask, std::uint32_t n) { return boost::dynamic_bitset<>(n, mask); }

std::uint64_t to_mask(const boost::dynamic_bitset<>& bits) {
  std::uint64_t m = 0;
  for (std::size_t i = bits.find_first(); i != boost::dynamic_bitset<>::npos; i = bits.find_next(i)) {
    m |= std::uint64_t{1} << i;
  }
  return m;
}

}  // namespace oinfty::detail
