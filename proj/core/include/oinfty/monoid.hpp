#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "oinfty/abelian.hpp"

namespace oinfty {

/// The weight sequence ω_1, ω_2, ... given by a finite prefix followed by
/// a tail repeated forever. Indices are 1-based.
class WeightSystem {
 public:
  /// Throws Validation on an empty tail or elements outside `group`.
  WeightSystem(GroupSpec group, std::vector<GroupElem> prefix, std::vector<GroupElem> tail);

  const GroupSpec& group() const { return group_; }
  const std::vector<GroupElem>& prefix() const { return prefix_; }
  const std::vector<GroupElem>& tail() const { return tail_; }
  std::size_t prefix_length() const { return prefix_.size(); }
  bool is_tail_index(std::uint64_t i) const { return i > prefix_.size(); }

  const GroupElem& weight(std::uint64_t i) const;

  /// Sorted distinct values of all weights.
  const std::vector<GroupElem>& distinct_values() const { return values_; }
  /// Sorted distinct values occurring in the tail (each occurs at
  /// infinitely many indices).
  const std::vector<GroupElem>& tail_values() const { return tail_values_; }
  /// Sorted distinct values occurring at some index other than i.
  std::vector<GroupElem> values_except(std::uint64_t i) const;

  std::string to_string() const;

 private:
  GroupSpec group_;
  std::vector<GroupElem> prefix_, tail_;
  std::vector<GroupElem> values_, tail_values_;
};

/// How often each weight value is used in a word summing to the query.
struct MembershipCertificate {
  std::map<GroupElem, Int> counts;

  GroupElem total(const GroupSpec& group) const;
};

struct SearchOptions {
  /// Node bound for one membership decision on groups with free part.
  std::uint64_t budget = 1'000'000;
  /// Finite groups up to this order get a materialized closure table.
  std::uint64_t table_limit = std::uint64_t{1} << 20;
};

/// sg(ω): all finite sums of weights, 0 included. Words may repeat letters,
/// so every weight value is available any number of times.
class Semigroup {
 public:
  explicit Semigroup(WeightSystem weights, SearchOptions options = {});

  const WeightSystem& weights() const;
  const GroupSpec& group() const { return weights().group(); }
  const SearchOptions& options() const;

  /// Certificate when x ∈ sg(ω), nullopt otherwise; BudgetExceeded when the
  /// search gives up.
  std::optional<MembershipCertificate> contains(const GroupElem& x) const;
  bool member(const GroupElem& x) const { return contains(x).has_value(); }

  /// sg₁ for index i: sums of nonempty words whose first letter is not i.
  bool contains_excluding(std::uint64_t i, const GroupElem& x) const;

  /// sg(ω) is a group, i.e. -w ∈ sg(ω) for every weight w.
  bool is_group() const;
  /// sg(ω) = Γ.
  bool is_full_group() const;

  /// Finite groups below the table limit only.
  bool has_table() const;
  const boost::dynamic_bitset<>& table() const;
  std::uint64_t order() const;
  /// Index map x -> x + distinct_values()[k] on a tabled finite group.
  const std::vector<std::uint32_t>& translation(std::size_t k) const;

 private:
  struct State;
  std::shared_ptr<const State> state_;
};

std::optional<MembershipCertificate> contains(const WeightSystem& w, const GroupElem& x, SearchOptions options = {});
bool sg1_contains(const WeightSystem& w, std::uint64_t i, const GroupElem& x, SearchOptions options = {});
/// NotFinite for groups with free part.
boost::dynamic_bitset<> closure_table(const WeightSystem& w);
bool is_full_group(const WeightSystem& w, SearchOptions options = {});

}  // namespace oinfty
