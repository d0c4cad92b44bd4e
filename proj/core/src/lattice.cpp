#include "oinfty/detail/lattice.hpp"

#include <utility>

namespace oinfty::detail {

Int floor_div(const Int& a, const Int& b) {
  Int q = a / b;
  if (a % b != 0 && ((a < 0) != (b < 0))) --q;
  return q;
}

Int mod_floor(const Int& a, const Int& b) {
  Int r = a % b;
  if (r < 0) r += (b < 0 ? -b : b);
  return r;
}

namespace {

void axpy_row(IntVector& target, const Int& q, const IntVector& source) {
  for (std::size_t c = 0; c < target.size(); ++c) target[c] -= q * source[c];
}

}  // namespace

IntMatrix hermite_normal_form(IntMatrix a, std::size_t cols) {
  std::size_t pivot = 0;
  for (std::size_t c = 0; c < cols && pivot < a.size(); ++c) {
    for (;;) {
      std::size_t best = a.size();
      for (std::size_t r = pivot; r < a.size(); ++r) {
        if (a[r][c] == 0) continue;
        if (best == a.size() || abs(a[r][c]) < abs(a[best][c])) best = r;
      }
      if (best == a.size()) break;
      std::swap(a[pivot], a[best]);
      bool cleared = true;
      for (std::size_t r = pivot + 1; r < a.size(); ++r) {
        if (a[r][c] == 0) continue;
        const Int q = a[r][c] / a[pivot][c];
        axpy_row(a[r], q, a[pivot]);
        if (a[r][c] != 0) cleared = false;
      }
      if (cleared) break;
    }
    if (a[pivot][c] == 0) continue;
    if (a[pivot][c] < 0) {
      for (auto& v : a[pivot]) v = -v;
    }
    for (std::size_t r = 0; r < pivot; ++r) {
      const Int q = floor_div(a[r][c], a[pivot][c]);
      if (q != 0) axpy_row(a[r], q, a[pivot]);
    }
    ++pivot;
  }
  a.resize(pivot);
  return a;
}

bool in_row_lattice(const IntMatrix& hnf, IntVector v) {
  std::size_t col = 0;
  for (const auto& row : hnf) {
    std::size_t p = 0;
    while (p < row.size() && row[p] == 0) ++p;
    for (; col < p; ++col) {
      if (v[col] != 0) return false;
    }
    if (v[p] % row[p] != 0) return false;
    const Int q = v[p] / row[p];
    axpy_row(v, q, row);
    col = p + 1;
  }
  for (; col < v.size(); ++col) {
    if (v[col] != 0) return false;
  }
  return true;
}

SmithForm smith_normal_form(IntMatrix a, std::size_t cols) {
  const std::size_t m = a.size();
  const std::size_t n = cols;
  IntMatrix v(n, IntVector(n, 0));
  for (std::size_t i = 0; i < n; ++i) v[i][i] = 1;

  auto swap_cols = [&](std::size_t x, std::size_t y) {
    if (x == y) return;
    for (auto& row : a) std::swap(row[x], row[y]);
    for (auto& row : v) std::swap(row[x], row[y]);
  };
  auto sub_col = [&](std::size_t target, const Int& q, std::size_t source) {
    for (auto& row : a) row[target] -= q * row[source];
    for (auto& row : v) row[target] -= q * row[source];
  };

  const std::size_t steps = std::min(m, n);
  IntVector diagonal(steps, 0);
  for (std::size_t t = 0; t < steps; ++t) {
    bool any = false;
    for (;;) {
      std::size_t bi = m, bj = n;
      for (std::size_t i = t; i < m; ++i) {
        for (std::size_t j = t; j < n; ++j) {
          if (a[i][j] == 0) continue;
          if (bi == m || abs(a[i][j]) < abs(a[bi][bj])) {
            bi = i;
            bj = j;
          }
        }
      }
      if (bi == m) break;
      any = true;
      std::swap(a[t], a[bi]);
      swap_cols(t, bj);

      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (a[i][t] == 0) continue;
        axpy_row(a[i], a[i][t] / a[t][t], a[t]);
        if (a[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (a[t][j] == 0) continue;
        sub_col(j, a[t][j] / a[t][t], t);
        if (a[t][j] != 0) clean = false;
      }
      if (!clean) continue;

      bool divides = true;
      for (std::size_t i = t + 1; i < m && divides; ++i) {
        for (std::size_t j = t + 1; j < n; ++j) {
          if (a[i][j] % a[t][t] != 0) {
            for (std::size_t c = 0; c < n; ++c) a[t][c] += a[i][c];
            divides = false;
            break;
          }
        }
      }
      if (divides) break;
    }
    if (!any) break;
    if (a[t][t] < 0) {
      for (auto& x : a[t]) x = -x;
    }
    diagonal[t] = a[t][t];
  }
  return SmithForm{std::move(diagonal), std::move(v)};
}

}  // namespace oinfty::detail
