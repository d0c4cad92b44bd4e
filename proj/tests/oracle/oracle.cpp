#include "oracle.hpp"

#include <algorithm>
#include <bit>

namespace oracle {

int FiniteGroup::order() const {
  int n = 1;
  for (auto m : moduli) n *= static_cast<int>(m);
  return n;
}

int FiniteGroup::index(const Coords& c) const {
  int idx = 0;
  for (std::size_t j = 0; j < moduli.size(); ++j) {
    long long v = c[j] % moduli[j];
    if (v < 0) v += moduli[j];
    idx = idx * static_cast<int>(moduli[j]) + static_cast<int>(v);
  }
  return idx;
}

Coords FiniteGroup::coords(int idx) const {
  Coords c(moduli.size());
  for (std::size_t j = moduli.size(); j-- > 0;) {
    c[j] = idx % moduli[j];
    idx /= static_cast<int>(moduli[j]);
  }
  return c;
}

int FiniteGroup::add(int a, int b) const {
  Coords x = coords(a), y = coords(b);
  for (std::size_t j = 0; j < x.size(); ++j) x[j] += y[j];
  return index(x);
}

int FiniteGroup::neg(int a) const {
  Coords x = coords(a);
  for (auto& v : x) v = -v;
  return index(x);
}

int FiniteSystem::weight(long long i) const {
  if (i <= static_cast<long long>(prefix.size())) return prefix[static_cast<std::size_t>(i - 1)];
  return tail[static_cast<std::size_t>((i - static_cast<long long>(prefix.size()) - 1) %
                                       static_cast<long long>(tail.size()))];
}

void WordEnumerator::for_each(const std::function<void(const std::vector<int>&)>& visit) const {
  std::vector<int> word;
  std::function<void()> rec = [&] {
    visit(word);
    if (static_cast<int>(word.size()) == max_length_) return;
    for (int a = 1; a <= alphabet_; ++a) {
      word.push_back(a);
      rec();
      word.pop_back();
    }
  };
  rec();
}

std::size_t WordEnumerator::count() const {
  std::size_t n = 0;
  for_each([&](const std::vector<int>&) { ++n; });
  return n;
}

std::set<int> oracle_sg(const FiniteSystem& w, int bound) {
  std::set<int> out;
  std::set<int> layer{0};
  out.insert(0);
  for (int k = 1; k <= bound; ++k) {
    std::set<int> next;
    for (int x : layer) {
      for (long long i = 1; i <= w.horizon(); ++i) next.insert(w.group.add(x, w.weight(i)));
    }
    out.insert(next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

Mask shift(const FiniteGroup& g, Mask x, int t) {
  Mask out = 0;
  for (int a = 0; a < g.order(); ++a) {
    if (x >> a & 1) out |= Mask{1} << g.add(a, t);
  }
  return out;
}

bool oracle_invariant(const FiniteSystem& w, Mask x) {
  for (long long i = 1; i <= w.horizon(); ++i) {
    if ((shift(w.group, x, w.weight(i)) & ~x) != 0) return false;
  }
  return true;
}

Mask oracle_h_set(const FiniteSystem& w, Mask x) {
  Mask reached = 0;
  for (long long i = 1; i <= w.horizon(); ++i) reached |= shift(w.group, x, w.weight(i));
  // limsup: the intersection over n of the unions beyond n, for n up to
  // the point where only tail indices remain
  Mask limsup = ~Mask{0};
  for (long long n = 0; n <= static_cast<long long>(w.prefix.size()) + 1; ++n) {
    Mask beyond = 0;
    for (long long i = n + 1; i <= w.horizon(); ++i) beyond |= shift(w.group, x, w.weight(i));
    limsup &= beyond;
  }
  return (x & ~reached) | limsup;
}

Mask oracle_x_n(const FiniteSystem& w, Mask x, Mask xinf, long long n) {
  Mask out = xinf;
  for (long long i = n + 1; i <= w.horizon(); ++i) out |= shift(w.group, x, w.weight(i));
  return out;
}

std::vector<Mask> oracle_invariant_sets(const FiniteSystem& w) {
  std::vector<Mask> out;
  const Mask total = Mask{1} << w.group.order();
  for (Mask x = 0; x < total; ++x) {
    if (oracle_invariant(w, x)) out.push_back(x);
  }
  return out;
}

std::vector<std::pair<Mask, Mask>> oracle_pairs(const FiniteSystem& w) {
  std::vector<std::pair<Mask, Mask>> out;
  const Mask total = Mask{1} << w.group.order();
  for (Mask x = 0; x < total; ++x) {
    if (!oracle_invariant(w, x)) continue;
    const Mask h = oracle_h_set(w, x);
    for (Mask s = 0; s < total; ++s) {
      if ((h & ~s) == 0 && (s & ~x) == 0) out.emplace_back(x, s);
    }
  }
  return out;
}

bool oracle_prime(Mask x, const std::vector<Mask>& family) {
  for (Mask a : family) {
    if ((x & ~a) == 0) continue;
    for (Mask b : family) {
      if ((x & ~b) == 0) continue;
      if ((x & ~(a | b)) == 0) return false;
    }
  }
  return true;
}

bool oracle_pair_prime(std::pair<Mask, Mask> p, const std::vector<std::pair<Mask, Mask>>& family) {
  auto covers = [](std::pair<Mask, Mask> big, std::pair<Mask, Mask> small) {
    return (small.first & ~big.first) == 0 && (small.second & ~big.second) == 0;
  };
  for (const auto& a : family) {
    if (covers(a, p)) continue;
    for (const auto& b : family) {
      if (covers(b, p)) continue;
      if (covers({a.first | b.first, a.second | b.second}, p)) return false;
    }
  }
  return true;
}

Mask oracle_invariance_set(const FiniteGroup& g, const std::vector<std::pair<Mask, Mask>>& family) {
  Mask out = 0;
  for (int t = 0; t < g.order(); ++t) {
    bool ok = true;
    for (const auto& [x, s] : family) {
      if ((shift(g, x, t) & ~x) != 0 || (shift(g, s, t) & ~s) != 0) {
        ok = false;
        break;
      }
    }
    if (ok) out |= Mask{1} << t;
  }
  return out;
}

Mask oracle_word_translates(const FiniteSystem& w, Mask s, long long n) {
  Mask out = s, layer = s;
  for (int k = 0; k < w.group.order(); ++k) {
    Mask next = 0;
    for (long long i = 1; i <= n; ++i) next |= shift(w.group, layer, w.weight(i));
    out |= next;
    layer = next;
  }
  return out;
}

Mask oracle_word_limit(const FiniteSystem& w, Mask x, long long n) {
  std::set<Mask> seen;
  Mask out = ~Mask{0};
  Mask layer = x;
  while (seen.insert(layer).second) {
    out &= layer;
    Mask next = 0;
    for (long long i = 1; i <= n; ++i) next |= shift(w.group, layer, w.weight(i));
    layer = next;
  }
  return out;
}

int oracle_order(const FiniteGroup& g, int a) {
  int k = 1;
  for (int s = a; s != 0; s = g.add(s, a)) ++k;
  return k;
}

namespace {

long long det(std::vector<std::vector<long long>> m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  if (n == 1) return m[0][0];
  long long total = 0;
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<std::vector<long long>> sub;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<long long> row;
      for (std::size_t k = 0; k < n; ++k) {
        if (k != c) row.push_back(m[r][k]);
      }
      sub.push_back(std::move(row));
    }
    const long long term = m[0][c] * det(std::move(sub));
    total += (c % 2 == 0) ? term : -term;
  }
  return total;
}

long long gcd_ll(long long a, long long b) {
  a = a < 0 ? -a : a;
  b = b < 0 ? -b : b;
  while (b) {
    const long long t = a % b;
    a = b;
    b = t;
  }
  return a;
}

void subsets(int n, int k, int start, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == k) {
    out.push_back(cur);
    return;
  }
  for (int i = start; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

}  // namespace

Presentation oracle_invariant_factors(const std::vector<std::vector<long long>>& rows, int cols) {
  const int m = static_cast<int>(rows.size());
  std::vector<long long> d{1};
  for (int k = 1; k <= std::min(m, cols); ++k) {
    std::vector<std::vector<int>> rs, cs;
    std::vector<int> cur;
    subsets(m, k, 0, cur, rs);
    subsets(cols, k, 0, cur, cs);
    long long g = 0;
    for (const auto& r : rs) {
      for (const auto& c : cs) {
        std::vector<std::vector<long long>> sub;
        for (int i : r) {
          std::vector<long long> row;
          for (int j : c) row.push_back(rows[i][j]);
          sub.push_back(std::move(row));
        }
        g = gcd_ll(g, det(std::move(sub)));
      }
    }
    if (g == 0) break;
    d.push_back(g);
  }
  Presentation p;
  const int rank = static_cast<int>(d.size()) - 1;
  p.free_rank = cols - rank;
  for (int k = 1; k <= rank; ++k) {
    const long long s = d[k] / d[k - 1];
    if (s >= 2) p.torsion.push_back(s);
  }
  return p;
}

long long IntSystem::weight(long long i) const {
  if (i <= static_cast<long long>(prefix.size())) return prefix[static_cast<std::size_t>(i - 1)];
  return tail[static_cast<std::size_t>((i - static_cast<long long>(prefix.size()) - 1) %
                                       static_cast<long long>(tail.size()))];
}

bool Window::test(long long x) const {
  if (!covers(x)) throw WindowTooSmall("point " + std::to_string(x) + " outside [" + std::to_string(lo) + ", " +
                                      std::to_string(hi) + "]");
  return in[static_cast<std::size_t>(x - lo)];
}

std::set<long long> Window::elements() const {
  std::set<long long> out;
  for (long long x = lo; x <= hi; ++x) {
    if (in[static_cast<std::size_t>(x - lo)]) out.insert(x);
  }
  return out;
}

Window oracle_sg_z(const IntSystem& w, int bound, long long lo, long long hi) {
  Window out(lo, hi);
  std::set<long long> layer{0};
  if (out.covers(0)) out.set(0);
  for (int k = 1; k <= bound; ++k) {
    std::set<long long> next;
    for (long long x : layer) {
      for (long long i = 1; i <= w.horizon(); ++i) {
        const long long y = x + w.weight(i);
        if (out.covers(y)) next.insert(y);
      }
    }
    for (long long y : next) out.set(y);
    layer = std::move(next);
  }
  return out;
}

Window oracle_h_set_z(const IntSystem& w, const Window& x, long long lo, long long hi) {
  Window out(lo, hi);
  for (long long g = lo; g <= hi; ++g) {
    if (!x.test(g)) continue;
    bool reached = false;
    for (long long i = 1; i <= w.horizon(); ++i) reached = reached || x.test(g - w.weight(i));
    bool limsup = true;
    for (long long n = 0; n <= static_cast<long long>(w.prefix.size()) + 1; ++n) {
      bool beyond = false;
      for (long long i = n + 1; i <= w.horizon(); ++i) beyond = beyond || x.test(g - w.weight(i));
      limsup = limsup && beyond;
    }
    if (!reached || limsup) out.set(g);
  }
  return out;
}

Window oracle_x_n_z(const IntSystem& w, const Window& x, const Window& xinf, long long n, long long lo, long long hi) {
  Window out(lo, hi);
  for (long long g = lo; g <= hi; ++g) {
    bool in = xinf.test(g);
    for (long long i = n + 1; i <= w.horizon(); ++i) in = in || x.test(g - w.weight(i));
    if (in) out.set(g);
  }
  return out;
}

}  // namespace oracle
