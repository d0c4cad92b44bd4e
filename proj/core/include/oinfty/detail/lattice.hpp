#pragma once

// Integer normal forms shared by the abelian-group code and the membership
// search.

#include <optional>

#include "oinfty/abelian.hpp"

namespace oinfty::detail {

/// Row Hermite normal form: nonzero rows in echelon form, positive pivots,
/// entries above each pivot reduced into [0, pivot). Unique for the lattice
/// spanned by the rows of `rows` (all of length `cols`).
IntMatrix hermite_normal_form(IntMatrix rows, std::size_t cols);

/// True iff `v` lies in the row lattice of an HNF basis.
bool in_row_lattice(const IntMatrix& hnf, IntVector v);

struct SmithForm {
  /// Diagonal entries d_0 | d_1 | ... (length min(rows, cols)); zero entries last.
  IntVector diagonal;
  /// Unimodular column transform: U * A * V = diag for some unimodular U.
  IntMatrix column_transform;
};

SmithForm smith_normal_form(IntMatrix a, std::size_t cols);

/// Floor division and the matching non-negative remainder for b > 0.
Int floor_div(const Int& a, const Int& b);
Int mod_floor(const Int& a, const Int& b);

}  // namespace oinfty::detail
