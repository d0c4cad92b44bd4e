#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "oinfty/monoid.hpp"

namespace oinfty {

/// A subset of Γ tied to the semigroup it lives over.
///
/// On groups with a closure table every set is Explicit (a bitset indexed
/// by GroupSpec::index_of). Elsewhere a set is Empty, Full, or Generated:
/// finitely many isolated points together with the principal sets b + sg(ω)
/// of finitely many bases.
class GammaSet {
 public:
  enum class Kind { Empty, Full, Explicit, Generated };

  static GammaSet empty(const Semigroup& sg);
  static GammaSet full(const Semigroup& sg);
  static GammaSet from_bits(const Semigroup& sg, boost::dynamic_bitset<> bits);
  static GammaSet generated(const Semigroup& sg, std::vector<GroupElem> bases, std::vector<GroupElem> points);
  static GammaSet principal(const Semigroup& sg, const GroupElem& base) { return generated(sg, {base}, {}); }
  static GammaSet finite(const Semigroup& sg, std::vector<GroupElem> elements) {
    return generated(sg, {}, std::move(elements));
  }

  Kind kind() const { return kind_; }
  const Semigroup& semigroup() const { return sg_; }
  const GroupSpec& group() const { return sg_.group(); }

  bool contains(const GroupElem& x) const;
  bool is_empty() const;
  bool is_full() const;

  /// Explicit only.
  const boost::dynamic_bitset<>& bits() const;
  /// Generated only (empty vectors otherwise).
  const std::vector<GroupElem>& bases() const { return bases_; }
  const std::vector<GroupElem>& points() const { return points_; }
  /// Elements that generate the set under adding sg(ω): the bases, the
  /// points, or every element of an Explicit set.
  std::vector<GroupElem> generators() const;
  /// All elements of an Explicit set in index order.
  std::vector<GroupElem> elements() const;

  bool subset_of(const GammaSet& other) const;
  GammaSet unite(const GammaSet& other) const;
  /// Explicit, Empty and Full only; UnsupportedRepresentation otherwise.
  GammaSet intersect(const GammaSet& other) const;
  GammaSet translate(const GroupElem& t) const;

  std::string to_string() const;

  friend bool operator==(const GammaSet& a, const GammaSet& b) { return a.subset_of(b) && b.subset_of(a); }

 private:
  GammaSet(Semigroup sg, Kind kind) : sg_(std::move(sg)), kind_(kind) {}

  Semigroup sg_;
  Kind kind_;
  boost::dynamic_bitset<> bits_;
  std::vector<GroupElem> bases_, points_;
};

/// X together with X^{(∞)}; valid when H_X ⊆ X^{(∞)} ⊆ X.
struct InvariantPair {
  GammaSet x;
  GammaSet xinf;

  friend bool operator==(const InvariantPair&, const InvariantPair&) = default;
};

/// X + w ⊆ X for every weight value w.
bool is_invariant(const GammaSet& s);

/// H_X = (X \ ⋃_i (X + ω_i)) ∪ ⋃_{tail values t} (X + t).
GammaSet h_set(const GammaSet& x);

/// X^{(n)} = X^{(∞)} ∪ ⋃_{i > n} (X + ω_i); X^{(0)} is X.
GammaSet x_n(const InvariantPair& p, std::uint64_t n);

/// X is invariant and H_X ⊆ Xinf ⊆ X.
bool validate_pair(const GammaSet& x, const GammaSet& xinf);
inline bool validate_pair(const InvariantPair& p) { return validate_pair(p.x, p.xinf); }

InvariantPair pair_union(const InvariantPair& a, const InvariantPair& b);
/// Componentwise intersection; finite groups only.
InvariantPair pair_intersection(const InvariantPair& a, const InvariantPair& b);

struct EnumOptions {
  std::size_t size_limit = 20;
  /// Cap on the number of pairs materialized by enumerate_pairs.
  std::uint64_t max_pairs = std::uint64_t{1} << 22;
};

/// All invariant subsets of a finite Γ in increasing bitmask order.
std::vector<GammaSet> enumerate_invariant_sets(const Semigroup& sg, EnumOptions options = {});
/// All valid pairs, ordered by X then by X^{(∞)} bitmask.
std::vector<InvariantPair> enumerate_pairs(const Semigroup& sg, EnumOptions options = {});
/// Σ_X 2^{|X \ H_X|} without materializing the pairs.
Int count_pairs(const Semigroup& sg, EnumOptions options = {});

}  // namespace oinfty
