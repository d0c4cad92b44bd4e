#include "oinfty/invariant.hpp"

#include <algorithm>
#include <bit>
#include <deque>

#include "oinfty/detail/finite.hpp"
#include "oinfty/error.hpp"

namespace oinfty {

namespace {

using Bits = boost::dynamic_bitset<>;

Bits shift_bits(const Bits& x, const std::vector<std::uint32_t>& tr) {
  Bits out(x.size());
  for (auto i = x.find_first(); i != Bits::npos; i = x.find_next(i)) out.set(tr[i]);
  return out;
}

// b + sg on a tabled group, by saturation along the weight translations
Bits principal_bits(const Semigroup& sg, const GroupElem& base) {
  const auto n = sg.order();
  const auto slots = sg.weights().distinct_values().size();
  Bits out(n);
  const auto start = static_cast<std::uint32_t>(sg.group().index_of(base));
  std::deque<std::uint32_t> queue{start};
  out.set(start);
  while (!queue.empty()) {
    const auto x = queue.front();
    queue.pop_front();
    for (std::size_t k = 0; k < slots; ++k) {
      const auto y = sg.translation(k)[x];
      if (!out.test(y)) {
        out.set(y);
        queue.push_back(y);
      }
    }
  }
  return out;
}

std::vector<GroupElem> sorted_unique(std::vector<GroupElem> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

void check_elements(const Semigroup& sg, const std::vector<GroupElem>& v) {
  for (const auto& e : v) {
    if (!sg.group().is_valid(e)) {
      fail(ErrorKind::Validation, "element " + oinfty::to_string(e) + " is not in " + sg.group().to_string());
    }
  }
}

}  // namespace

GammaSet GammaSet::empty(const Semigroup& sg) {
  if (sg.has_table()) return from_bits(sg, Bits(sg.order()));
  return GammaSet(sg, Kind::Empty);
}

GammaSet GammaSet::full(const Semigroup& sg) {
  if (sg.has_table()) {
    Bits b(sg.order());
    b.set();
    return from_bits(sg, std::move(b));
  }
  return GammaSet(sg, Kind::Full);
}

GammaSet GammaSet::from_bits(const Semigroup& sg, Bits bits) {
  if (!sg.has_table()) {
    fail(ErrorKind::UnsupportedRepresentation, "explicit sets need a tabled finite group, got " + sg.group().to_string());
  }
  if (bits.size() != sg.order()) {
    fail(ErrorKind::Validation, "bitset of size " + std::to_string(bits.size()) + " for a group of order " +
                                    std::to_string(sg.order()));
  }
  GammaSet s(sg, Kind::Explicit);
  s.bits_ = std::move(bits);
  return s;
}

GammaSet GammaSet::generated(const Semigroup& sg, std::vector<GroupElem> bases, std::vector<GroupElem> points) {
  check_elements(sg, bases);
  check_elements(sg, points);
  const auto& g = sg.group();
  if (sg.has_table()) {
    Bits b(sg.order());
    for (const auto& base : bases) b |= principal_bits(sg, base);
    for (const auto& p : points) b.set(g.index_of(p));
    return from_bits(sg, std::move(b));
  }

  bases = sorted_unique(std::move(bases));
  std::vector<GroupElem> kept;
  for (const auto& b : bases) {
    bool covered = false;
    for (const auto& c : kept) {
      if (sg.member(g.sub(b, c))) {
        covered = true;
        break;
      }
    }
    if (covered) continue;
    std::erase_if(kept, [&](const GroupElem& c) { return sg.member(g.sub(c, b)); });
    kept.push_back(b);
  }
  std::sort(kept.begin(), kept.end());

  std::vector<GroupElem> isolated;
  for (const auto& p : sorted_unique(std::move(points))) {
    bool covered = false;
    for (const auto& c : kept) {
      if (sg.member(g.sub(p, c))) {
        covered = true;
        break;
      }
    }
    if (!covered) isolated.push_back(p);
  }

  // a point whose every successor is already covered is really a base
  std::vector<GroupElem> promoted, rest;
  for (const auto& p : isolated) {
    bool closed = true;
    for (const auto& w : sg.weights().distinct_values()) {
      if (g.is_zero(w)) continue;
      const auto y = g.add(p, w);
      closed = std::any_of(kept.begin(), kept.end(), [&](const GroupElem& c) { return sg.member(g.sub(y, c)); });
      if (!closed) break;
    }
    (closed ? promoted : rest).push_back(p);
  }
  if (!promoted.empty()) {
    kept.insert(kept.end(), promoted.begin(), promoted.end());
    return generated(sg, std::move(kept), std::move(rest));
  }

  if (kept.empty() && isolated.empty()) return GammaSet(sg, Kind::Empty);
  if (!kept.empty() && sg.is_group()) {
    // bases now sit in distinct cosets of the group sg(ω)
    auto q = quotient(g, subgroup_generated(sg.weights().distinct_values(), g));
    if (q.group.is_finite() && *q.group.order() == kept.size()) return GammaSet(sg, Kind::Full);
  }
  GammaSet s(sg, Kind::Generated);
  s.bases_ = std::move(kept);
  s.points_ = std::move(isolated);
  return s;
}

bool GammaSet::contains(const GroupElem& x) const {
  switch (kind_) {
    case Kind::Empty: return false;
    case Kind::Full: return true;
    case Kind::Explicit: return bits_.test(group().index_of(x));
    case Kind::Generated: break;
  }
  if (std::binary_search(points_.begin(), points_.end(), x)) return true;
  for (const auto& b : bases_) {
    if (sg_.member(group().sub(x, b))) return true;
  }
  return false;
}

bool GammaSet::is_empty() const {
  if (kind_ == Kind::Explicit) return bits_.none();
  return kind_ == Kind::Empty;
}

bool GammaSet::is_full() const {
  if (kind_ == Kind::Explicit) return bits_.all();
  return kind_ == Kind::Full;
}

const Bits& GammaSet::bits() const {
  if (kind_ != Kind::Explicit) fail(ErrorKind::UnsupportedRepresentation, "set " + to_string() + " is not explicit");
  return bits_;
}

std::vector<GroupElem> GammaSet::elements() const {
  const auto& b = bits();
  std::vector<GroupElem> out;
  for (auto i = b.find_first(); i != Bits::npos; i = b.find_next(i)) out.push_back(group().element_at(i));
  return out;
}

std::vector<GroupElem> GammaSet::generators() const {
  switch (kind_) {
    case Kind::Empty: return {};
    case Kind::Explicit: return elements();
    case Kind::Full:
      fail(ErrorKind::UnsupportedRepresentation, "the full set of " + group().to_string() + " has no finite generators");
    case Kind::Generated: break;
  }
  auto v = bases_;
  v.insert(v.end(), points_.begin(), points_.end());
  return v;
}

bool GammaSet::subset_of(const GammaSet& other) const {
  if (is_empty() || other.is_full()) return true;
  if (kind_ == Kind::Explicit && other.kind_ == Kind::Explicit) return bits_.is_subset_of(other.bits_);
  if (kind_ == Kind::Explicit || other.kind_ == Kind::Explicit) {
    fail(ErrorKind::UnsupportedRepresentation, "cannot compare " + to_string() + " with " + other.to_string());
  }
  if (other.is_empty() || kind_ == Kind::Full) return false;

  for (const auto& p : points_) {
    if (!other.contains(p)) return false;
  }
  // b + sg ⊆ other: walk up from b through isolated points of other until
  // every branch lands in one of its principal parts
  const auto& g = group();
  auto in_bases = [&](const GroupElem& y) {
    for (const auto& c : other.bases_) {
      if (sg_.member(g.sub(y, c))) return true;
    }
    return false;
  };
  std::vector<GroupElem> steps;
  for (const auto& w : sg_.weights().distinct_values()) {
    if (!g.is_zero(w)) steps.push_back(w);
  }
  for (const auto& b : bases_) {
    std::vector<GroupElem> seen;
    std::deque<GroupElem> queue{b};
    while (!queue.empty()) {
      auto y = std::move(queue.front());
      queue.pop_front();
      if (in_bases(y)) continue;
      if (!std::binary_search(other.points_.begin(), other.points_.end(), y)) return false;
      if (std::find(seen.begin(), seen.end(), y) != seen.end()) continue;
      seen.push_back(y);
      for (const auto& w : steps) queue.push_back(g.add(y, w));
    }
  }
  return true;
}

GammaSet GammaSet::unite(const GammaSet& other) const {
  if (kind_ == Kind::Explicit && other.kind_ == Kind::Explicit) return from_bits(sg_, bits_ | other.bits_);
  if (is_full() || other.is_empty()) return *this;
  if (other.is_full() || is_empty()) return other;
  if (kind_ == Kind::Explicit || other.kind_ == Kind::Explicit) {
    fail(ErrorKind::UnsupportedRepresentation, "cannot unite " + to_string() + " with " + other.to_string());
  }
  auto b = bases_;
  b.insert(b.end(), other.bases_.begin(), other.bases_.end());
  auto p = points_;
  p.insert(p.end(), other.points_.begin(), other.points_.end());
  return generated(sg_, std::move(b), std::move(p));
}

GammaSet GammaSet::intersect(const GammaSet& other) const {
  if (kind_ == Kind::Explicit && other.kind_ == Kind::Explicit) return from_bits(sg_, bits_ & other.bits_);
  if (is_empty() || other.is_full()) return *this;
  if (other.is_empty() || is_full()) return other;
  fail(ErrorKind::UnsupportedRepresentation, "cannot intersect " + to_string() + " with " + other.to_string());
}

GammaSet GammaSet::translate(const GroupElem& t) const {
  const auto& g = group();
  switch (kind_) {
    case Kind::Empty:
    case Kind::Full: return *this;
    case Kind::Explicit: {
      Bits out(bits_.size());
      for (auto i = bits_.find_first(); i != Bits::npos; i = bits_.find_next(i)) {
        out.set(g.index_of(g.add(g.element_at(i), t)));
      }
      return from_bits(sg_, std::move(out));
    }
    case Kind::Generated: break;
  }
  auto b = bases_;
  for (auto& x : b) x = g.add(x, t);
  auto p = points_;
  for (auto& x : p) x = g.add(x, t);
  return generated(sg_, std::move(b), std::move(p));
}

std::string GammaSet::to_string() const {
  auto list = [](const std::vector<GroupElem>& v) {
    std::string s = "{";
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) s += ", ";
      s += oinfty::to_string(v[i]);
    }
    return s + "}";
  };
  switch (kind_) {
    case Kind::Empty: return "{}";
    case Kind::Full: return "all of " + group().to_string();
    case Kind::Explicit: return list(elements());
    case Kind::Generated: break;
  }
  std::string s;
  for (const auto& b : bases_) {
    if (!s.empty()) s += " u ";
    s += "(" + oinfty::to_string(b) + " + sg)";
  }
  if (!points_.empty()) {
    if (!s.empty()) s += " u ";
    s += list(points_);
  }
  return s;
}

bool is_invariant(const GammaSet& s) {
  const auto& sg = s.semigroup();
  const auto& values = sg.weights().distinct_values();
  switch (s.kind()) {
    case GammaSet::Kind::Empty:
    case GammaSet::Kind::Full: return true;
    case GammaSet::Kind::Explicit:
      for (std::size_t k = 0; k < values.size(); ++k) {
        if (!shift_bits(s.bits(), sg.translation(k)).is_subset_of(s.bits())) return false;
      }
      return true;
    case GammaSet::Kind::Generated: break;
  }
  const auto& g = s.group();
  for (const auto& p : s.points()) {
    for (const auto& w : values) {
      if (!s.contains(g.add(p, w))) return false;
    }
  }
  return true;
}

GammaSet h_set(const GammaSet& x) {
  const auto& sg = x.semigroup();
  const auto& w = sg.weights();
  const auto& values = w.distinct_values();
  const auto& g = x.group();
  switch (x.kind()) {
    case GammaSet::Kind::Empty:
    case GammaSet::Kind::Full: return x;
    case GammaSet::Kind::Explicit: {
      const auto& b = x.bits();
      Bits reached(b.size()), tails(b.size());
      for (std::size_t k = 0; k < values.size(); ++k) {
        Bits t = shift_bits(b, sg.translation(k));
        reached |= t;
        if (std::binary_search(w.tail_values().begin(), w.tail_values().end(), values[k])) tails |= t;
      }
      return GammaSet::from_bits(sg, (b - reached) | tails);
    }
    case GammaSet::Kind::Generated: break;
  }
  // only generators can fail to be reached: any other element is a
  // generator plus a nonempty word and so lies in X + (its last letter)
  std::vector<GroupElem> first;
  for (const auto& c : x.generators()) {
    bool reached = false;
    for (const auto& v : values) {
      if (x.contains(g.sub(c, v))) {
        reached = true;
        break;
      }
    }
    if (!reached) first.push_back(c);
  }
  std::vector<GroupElem> bases, points = first;
  for (const auto& t : w.tail_values()) {
    for (const auto& b : x.bases()) bases.push_back(g.add(b, t));
    for (const auto& p : x.points()) points.push_back(g.add(p, t));
  }
  return GammaSet::generated(sg, std::move(bases), std::move(points));
}

GammaSet x_n(const InvariantPair& p, std::uint64_t n) {
  const auto& w = p.x.semigroup().weights();
  GammaSet out = p.xinf;
  for (std::uint64_t i = n + 1; i <= w.prefix_length(); ++i) out = out.unite(p.x.translate(w.weight(i)));
  for (const auto& t : w.tail_values()) out = out.unite(p.x.translate(t));
  return out;
}

bool validate_pair(const GammaSet& x, const GammaSet& xinf) {
  return is_invariant(x) && h_set(x).subset_of(xinf) && xinf.subset_of(x);
}

InvariantPair pair_union(const InvariantPair& a, const InvariantPair& b) {
  return InvariantPair{a.x.unite(b.x), a.xinf.unite(b.xinf)};
}

InvariantPair pair_intersection(const InvariantPair& a, const InvariantPair& b) {
  return InvariantPair{a.x.intersect(b.x), a.xinf.intersect(b.xinf)};
}

std::vector<GammaSet> enumerate_invariant_sets(const Semigroup& sg, EnumOptions options) {
  const auto v = detail::mask_view(sg, options.size_limit);
  std::vector<GammaSet> out;
  for (std::uint64_t m = 0; m <= v.all; ++m) {
    if (v.invariant(m)) out.push_back(GammaSet::from_bits(sg, detail::to_bits(m, v.n)));
  }
  return out;
}

std::vector<InvariantPair> enumerate_pairs(const Semigroup& sg, EnumOptions options) {
  const auto v = detail::mask_view(sg, options.size_limit);
  std::vector<InvariantPair> out;
  for (std::uint64_t m = 0; m <= v.all; ++m) {
    if (!v.invariant(m)) continue;
    const std::uint64_t h = v.h(m);
    const std::uint64_t free = m & ~h;
    const auto x = GammaSet::from_bits(sg, detail::to_bits(m, v.n));
    std::uint64_t sub = 0;
    do {
      if (out.size() >= options.max_pairs) {
        fail(ErrorKind::SizeLimit, "more than " + std::to_string(options.max_pairs) + " invariant pairs over " +
                                       sg.group().to_string());
      }
      out.push_back(InvariantPair{x, GammaSet::from_bits(sg, detail::to_bits(h | sub, v.n))});
      sub = (sub - free) & free;
    } while (sub != 0);
  }
  return out;
}

Int count_pairs(const Semigroup& sg, EnumOptions options) {
  const auto v = detail::mask_view(sg, options.size_limit);
  Int total = 0;
  for (std::uint64_t m = 0; m <= v.all; ++m) {
    if (v.invariant(m)) total += Int(1) << std::popcount(m & ~v.h(m));
  }
  return total;
}

}  // namespace oinfty
