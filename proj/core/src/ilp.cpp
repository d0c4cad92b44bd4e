#include "oinfty/detail/ilp.hpp"

#include <boost/integer/common_factor.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "oinfty/detail/lattice.hpp"
#include "oinfty/error.hpp"

namespace oinfty::detail {

using Rational = boost::multiprecision::cpp_rational;

void SearchBudget::charge(std::uint64_t n) {
  used += n;
  if (used > max_nodes) {
    fail(ErrorKind::BudgetExceeded, "membership search used more than " + std::to_string(max_nodes) + " nodes");
  }
}

namespace {

// Phase one of the simplex method with Bland's rule: some z >= 0 with
// m z = d, or nullopt. The point returned is a basic solution.
std::optional<std::vector<Rational>> feasible_point(std::vector<std::vector<Rational>> m, std::vector<Rational> d,
                                                    std::size_t n) {
  const std::size_t p = m.size();
  for (std::size_t i = 0; i < p; ++i) {
    if (d[i] < 0) {
      for (auto& x : m[i]) x = -x;
      d[i] = -d[i];
    }
  }
  const std::size_t width = n + p;
  std::vector<std::vector<Rational>> t(p, std::vector<Rational>(width + 1, 0));
  std::vector<std::size_t> basis(p);
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = 0; j < n; ++j) t[i][j] = m[i][j];
    t[i][n + i] = 1;
    t[i][width] = d[i];
    basis[i] = n + i;
  }
  // reduced costs for minimizing the sum of artificials, last entry is -objective
  std::vector<Rational> cost(width + 1, 0);
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = 0; j < n; ++j) cost[j] -= t[i][j];
    cost[width] -= t[i][width];
  }
  for (;;) {
    std::size_t enter = width;
    for (std::size_t j = 0; j < width; ++j) {
      if (cost[j] < 0) {
        enter = j;
        break;
      }
    }
    if (enter == width) break;
    std::size_t leave = p;
    Rational best;
    for (std::size_t i = 0; i < p; ++i) {
      if (t[i][enter] <= 0) continue;
      Rational ratio = t[i][width] / t[i][enter];
      if (leave == p || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave == p) break;  // unbounded direction cannot occur in phase one
    const Rational piv = t[leave][enter];
    for (auto& x : t[leave]) x /= piv;
    for (std::size_t i = 0; i < p; ++i) {
      if (i == leave || t[i][enter] == 0) continue;
      const Rational f = t[i][enter];
      for (std::size_t j = 0; j <= width; ++j) t[i][j] -= f * t[leave][j];
    }
    if (cost[enter] != 0) {
      const Rational f = cost[enter];
      for (std::size_t j = 0; j <= width; ++j) cost[j] -= f * t[leave][j];
    }
    basis[leave] = enter;
  }
  if (cost[width] != 0) return std::nullopt;
  std::vector<Rational> z(n, 0);
  for (std::size_t i = 0; i < p; ++i) {
    if (basis[i] < n) z[basis[i]] = t[i][width];
  }
  return z;
}

Int floor_rational(const Rational& x) {
  Int q = numerator(x) / denominator(x);
  if (x < 0 && q * denominator(x) != numerator(x)) --q;
  return q;
}

}  // namespace

std::optional<std::vector<Int>> solve_free(const IntMatrix& a, std::size_t cols, const IntVector& b,
                                           SearchBudget& budget) {
  const std::size_t rows = a.size();
  if (rows == 0) return std::vector<Int>(cols, 0);

  // integer lattice test first: b must be an integer combination of columns
  IntMatrix col_rows(cols, IntVector(rows));
  for (std::size_t j = 0; j < cols; ++j) {
    for (std::size_t i = 0; i < rows; ++i) col_rows[j][i] = a[i][j];
  }
  if (!in_row_lattice(hermite_normal_form(col_rows, rows), b)) return std::nullopt;
  if (cols == 0) return std::vector<Int>{};

  // a solution exists inside [0, cols * (rows * amax)^(2 rows + 1)] if at all
  Int amax = 1;
  for (const auto& row : a) {
    for (const auto& x : row) amax = std::max(amax, Int(abs(x)));
  }
  for (const auto& x : b) amax = std::max(amax, Int(abs(x)));
  Int box = cols;
  const Int base = rows * amax;
  for (std::size_t k = 0; k < 2 * rows + 1; ++k) box *= base;

  struct Node {
    std::vector<Int> lo, hi;
  };
  std::vector<Node> stack;
  stack.push_back(Node{std::vector<Int>(cols, 0), std::vector<Int>(cols, box)});
  while (!stack.empty()) {
    budget.charge();
    Node node = std::move(stack.back());
    stack.pop_back();

    // y = q - lo, rows of A then one slack row per upper bound
    const std::size_t p = rows + cols;
    const std::size_t n = 2 * cols;
    std::vector<std::vector<Rational>> m(p, std::vector<Rational>(n, 0));
    std::vector<Rational> d(p, 0);
    for (std::size_t i = 0; i < rows; ++i) {
      Int rhs = b[i];
      for (std::size_t j = 0; j < cols; ++j) {
        m[i][j] = Rational(a[i][j]);
        rhs -= a[i][j] * node.lo[j];
      }
      d[i] = Rational(rhs);
    }
    for (std::size_t j = 0; j < cols; ++j) {
      m[rows + j][j] = 1;
      m[rows + j][cols + j] = 1;
      d[rows + j] = Rational(node.hi[j] - node.lo[j]);
    }
    auto z = feasible_point(std::move(m), std::move(d), n);
    if (!z) continue;

    std::size_t frac = cols;
    for (std::size_t j = 0; j < cols; ++j) {
      if (denominator((*z)[j]) != 1) {
        frac = j;
        break;
      }
    }
    if (frac == cols) {
      std::vector<Int> q(cols);
      for (std::size_t j = 0; j < cols; ++j) q[j] = node.lo[j] + numerator((*z)[j]);
      return q;
    }
    const Int v = node.lo[frac] + floor_rational((*z)[frac]);
    Node up = node;
    up.lo[frac] = v + 1;
    Node down = std::move(node);
    down.hi[frac] = v;
    stack.push_back(std::move(up));
    stack.push_back(std::move(down));
  }
  return std::nullopt;
}

std::optional<std::vector<Int>> solve_nonnegative(const GroupSpec& group, const std::vector<GroupElem>& gens,
                                                  const GroupElem& target, SearchBudget& budget) {
  const std::size_t r = group.free_rank();
  const auto& tors = group.torsion();
  std::vector<Int> counts(gens.size(), 0);

  // torsion-only order of each generator: the step by which its count can
  // change without moving the torsion coordinates
  std::vector<Int> step(gens.size(), 1);
  std::vector<std::size_t> cyclic;  // generators with nonzero torsion part
  for (std::size_t k = 0; k < gens.size(); ++k) {
    Int o = 1;
    for (std::size_t j = 0; j < tors.size(); ++j) {
      const Int& c = gens[k].coords[r + j];
      o = boost::integer::lcm(o, tors[j] / boost::integer::gcd(c, tors[j]));
    }
    step[k] = o;
    if (o != 1) cyclic.push_back(k);
  }

  std::vector<std::size_t> active;  // generators with nonzero free part
  for (std::size_t k = 0; k < gens.size(); ++k) {
    for (std::size_t i = 0; i < r; ++i) {
      if (gens[k].coords[i] != 0) {
        active.push_back(k);
        break;
      }
    }
  }
  IntMatrix a(r, IntVector(active.size()));
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < active.size(); ++j) a[i][j] = step[active[j]] * gens[active[j]].coords[i];
  }

  std::vector<Int> residue(cyclic.size(), 0);
  for (;;) {
    budget.charge();
    bool torsion_ok = true;
    for (std::size_t j = 0; j < tors.size() && torsion_ok; ++j) {
      Int s = 0;
      for (std::size_t t = 0; t < cyclic.size(); ++t) s += residue[t] * gens[cyclic[t]].coords[r + j];
      torsion_ok = mod_floor(s - target.coords[r + j], tors[j]) == 0;
    }
    if (torsion_ok) {
      IntVector rhs(r);
      for (std::size_t i = 0; i < r; ++i) {
        rhs[i] = target.coords[i];
        for (std::size_t t = 0; t < cyclic.size(); ++t) rhs[i] -= residue[t] * gens[cyclic[t]].coords[i];
      }
      if (auto q = solve_free(a, active.size(), rhs, budget)) {
        for (std::size_t t = 0; t < cyclic.size(); ++t) counts[cyclic[t]] = residue[t];
        for (std::size_t j = 0; j < active.size(); ++j) counts[active[j]] += step[active[j]] * (*q)[j];
        return counts;
      }
    }
    std::size_t t = 0;
    for (; t < cyclic.size(); ++t) {
      if (++residue[t] < step[cyclic[t]]) break;
      residue[t] = 0;
    }
    if (t == cyclic.size()) break;
  }
  return std::nullopt;
}

}  // namespace oinfty::detail
