#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace oinfty {

using Int = boost::multiprecision::cpp_int;
using IntVector = std::vector<Int>;
/// Row-major dense integer matrix.
using IntMatrix = std::vector<IntVector>;

/// An element of a finitely generated abelian group, in the coordinates of
/// its GroupSpec: free coordinates first, then one coordinate per invariant
/// factor, reduced into [0, n_j).
struct GroupElem {
  IntVector coords;

  friend bool operator==(const GroupElem&, const GroupElem&) = default;
  friend bool operator<(const GroupElem& a, const GroupElem& b) { return a.coords < b.coords; }
};

/// Z^free_rank + Z/torsion[0] + ... in invariant-factor form: every torsion
/// entry is >= 2 and divides the next one.
class GroupSpec {
 public:
  GroupSpec() = default;
  /// Throws Validation unless `torsion` is already in invariant-factor form.
  GroupSpec(std::size_t free_rank, std::vector<Int> torsion);

  static GroupSpec free(std::size_t rank) { return GroupSpec(rank, {}); }
  static GroupSpec cyclic(const Int& n) { return n == 1 ? GroupSpec() : GroupSpec(0, {n}); }

  std::size_t free_rank() const { return free_rank_; }
  const std::vector<Int>& torsion() const { return torsion_; }
  std::size_t dim() const { return free_rank_ + torsion_.size(); }
  bool is_finite() const { return free_rank_ == 0; }
  bool is_trivial() const { return free_rank_ == 0 && torsion_.empty(); }

  /// |Γ| for finite groups, nullopt otherwise.
  std::optional<Int> order() const;

  /// |Γ| as a machine integer; NotFinite for free_rank > 0 and SizeLimit
  /// above `cap`.
  std::uint64_t finite_order(std::uint64_t cap = std::uint64_t{1} << 32) const;

  /// Reduces raw coordinates; throws Validation on a length mismatch.
  GroupElem elem(IntVector raw) const;
  GroupElem elem(std::initializer_list<long long> raw) const;
  GroupElem zero() const;

  GroupElem add(const GroupElem& a, const GroupElem& b) const;
  GroupElem neg(const GroupElem& a) const;
  GroupElem sub(const GroupElem& a, const GroupElem& b) const;
  GroupElem scale(const Int& k, const GroupElem& a) const;
  bool is_zero(const GroupElem& a) const;
  bool is_valid(const GroupElem& a) const;

  /// Mixed-radix index of an element of a finite group; the first torsion
  /// coordinate is the most significant digit, so index order is
  /// lexicographic coordinate order.
  std::uint64_t index_of(const GroupElem& a) const;
  GroupElem element_at(std::uint64_t index) const;

  /// Human-readable name such as "Z^2 + Z/2 + Z/4"; the trivial group is "0".
  std::string to_string() const;

  friend bool operator==(const GroupSpec&, const GroupSpec&) = default;

 private:
  std::size_t free_rank_ = 0;
  std::vector<Int> torsion_;
};

/// Least k >= 1 with k*g = 0, or nullopt when g has infinite order.
std::optional<Int> order_of(const GroupElem& g, const GroupSpec& group);

/// A homomorphism given by an integer matrix on lifted coordinates,
/// followed by reduction in the target.
struct Projection {
  GroupSpec target;
  IntMatrix rows;  // target.dim() rows, one column per source coordinate

  GroupElem operator()(const GroupElem& x) const;
  GroupElem apply_raw(const IntVector& raw) const;
};

struct Presentation {
  GroupSpec group;
  /// Maps raw generator coordinates Z^rank onto `group`.
  Projection projection;
};

/// Invariant-factor form of Z^rank / rowspan(relations).
Presentation normalize(std::size_t rank, const IntMatrix& relations);

/// Subgroup of a GroupSpec, stored as the Hermite normal form of the full
/// preimage lattice in Z^dim (which always contains the torsion relations).
/// Equal subgroups have equal descriptors.
class Subgroup {
 public:
  Subgroup(GroupSpec ambient, IntMatrix hnf_basis);

  const GroupSpec& ambient() const { return ambient_; }
  const IntMatrix& basis() const { return basis_; }

  bool contains(const GroupElem& g) const;
  bool is_full() const;
  bool is_trivial() const;

  friend bool operator==(const Subgroup&, const Subgroup&) = default;

 private:
  GroupSpec ambient_;
  IntMatrix basis_;
};

Subgroup subgroup_generated(const std::vector<GroupElem>& gens, const GroupSpec& group);

struct Quotient {
  GroupSpec group;
  Projection projection;
};

Quotient quotient(const GroupSpec& group, const Subgroup& sub);

std::string to_string(const GroupElem& g);

}  // namespace oinfty
