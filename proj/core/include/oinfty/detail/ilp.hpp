#pragma once

// Nonnegative integer feasibility for sums of group elements.

#include <cstdint>
#include <optional>
#include <vector>

#include "oinfty/abelian.hpp"

namespace oinfty::detail {

/// Node counter shared by one decision. Throws BudgetExceeded once
/// `max_nodes` is passed.
struct SearchBudget {
  std::uint64_t max_nodes = 1'000'000;
  std::uint64_t used = 0;

  void charge(std::uint64_t n = 1);
};

/// Some q in N^cols with A q = b, or nullopt. A is rows x cols (row-major,
/// may have zero rows).
std::optional<std::vector<Int>> solve_free(const IntMatrix& a, std::size_t cols, const IntVector& b,
                                           SearchBudget& budget);

/// Some c in N^gens with sum c_k gens[k] = target in `group`, or nullopt.
std::optional<std::vector<Int>> solve_nonnegative(const GroupSpec& group, const std::vector<GroupElem>& gens,
                                                  const GroupElem& target, SearchBudget& budget);

}  // namespace oinfty::detail
