#include "oinfty/classify.hpp"

#include <algorithm>

#include "oinfty/error.hpp"

namespace oinfty {

Rational normalize_angle(const Rational& theta) {
  const Int num = numerator(theta), den = denominator(theta);
  Int r = num % den;
  if (r < 0) r += den;
  return Rational(r, den);
}

std::string angle_to_string(const Rational& theta) {
  return numerator(theta).str() + "/" + denominator(theta).str();
}

Rational parse_rational(const std::string& text) {
  auto parse_int = [&](const std::string& s) -> Int {
    std::size_t i = (s.size() > 0 && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (i == s.size()) fail(ErrorKind::Validation, "not a rational number: \"" + text + "\"");
    for (std::size_t j = i; j < s.size(); ++j) {
      if (s[j] < '0' || s[j] > '9') fail(ErrorKind::Validation, "not a rational number: \"" + text + "\"");
    }
    return Int(s[0] == '+' ? s.substr(1) : s);
  };
  const auto slash = text.find('/');
  if (slash == std::string::npos) return Rational(parse_int(text));
  const Int num = parse_int(text.substr(0, slash));
  const Int den = parse_int(text.substr(slash + 1));
  if (den == 0) fail(ErrorKind::Validation, "zero denominator in \"" + text + "\"");
  return Rational(num, den);
}

const Violation& ConditionReport::violated() const {
  if (!violation) fail(ErrorKind::ConditionNotViolated, "every weight index satisfies the condition");
  return *violation;
}

ConditionReport check_condition(const Semigroup& sg) {
  const auto& w = sg.weights();
  const auto& g = sg.group();
  ConditionReport report;
  // tail indices are checked through one representative per position
  const std::uint64_t last = w.prefix_length() + w.tail().size();
  for (std::uint64_t i = 1; i <= last; ++i) {
    const auto ord = order_of(w.weight(i), g);
    if (!ord) continue;
    bool escapes = false;
    for (const auto& u : w.values_except(i)) {
      if (sg.member(g.neg(u))) {
        escapes = true;
        break;
      }
    }
    if (escapes) continue;
    if (w.is_tail_index(i) || report.violation) {
      fail(ErrorKind::InternalInvariantBroken, "condition fails at index " + std::to_string(i) +
                                                   (report.violation ? " and at index " +
                                                                           std::to_string(report.violation->index)
                                                                     : std::string(" of the tail")) +
                                                   " for " + w.to_string());
    }
    auto q = quotient(g, subgroup_generated({w.weight(i)}, g));
    report.violation = Violation{i, *ord, std::move(q.group), std::move(q.projection)};
  }
  return report;
}

namespace {

GroupSpec square_group(const GroupSpec& g) {
  std::vector<Int> tors;
  for (const auto& t : g.torsion()) {
    tors.push_back(t);
    tors.push_back(t);
  }
  return GroupSpec(2 * g.free_rank(), std::move(tors));
}

GroupElem square_elem(const GroupSpec& g, const GroupElem& a, const GroupElem& b) {
  const std::size_t r = g.free_rank();
  IntVector v;
  for (std::size_t i = 0; i < r; ++i) v.push_back(a.coords[i]);
  for (std::size_t i = 0; i < r; ++i) v.push_back(b.coords[i]);
  for (std::size_t j = 0; j < g.torsion().size(); ++j) {
    v.push_back(a.coords[r + j]);
    v.push_back(b.coords[r + j]);
  }
  return GroupElem{std::move(v)};
}

// pairs (s + s1, s + s2) with s, s1, s2 ∈ sg(ω)
Semigroup common_ancestor_monoid(const Semigroup& sg) {
  const auto& g = sg.group();
  const auto sq = square_group(g);
  std::vector<GroupElem> gens;
  const auto zero = g.zero();
  for (const auto& w : sg.weights().distinct_values()) {
    if (g.is_zero(w)) continue;
    gens.push_back(square_elem(g, w, w));
    gens.push_back(square_elem(g, w, zero));
    gens.push_back(square_elem(g, zero, w));
  }
  if (gens.empty()) gens.push_back(sq.zero());
  return Semigroup(WeightSystem(sq, {}, std::move(gens)), sg.options());
}

}  // namespace

bool is_prime_set(const GammaSet& x) {
  const auto& sg = x.semigroup();
  const auto& g = x.group();
  switch (x.kind()) {
    case GammaSet::Kind::Empty: return true;
    case GammaSet::Kind::Full:
      // common ancestors exist iff every difference lies in sg - sg
      return subgroup_generated(sg.weights().distinct_values(), g).is_full();
    case GammaSet::Kind::Explicit: {
      const auto elems = x.elements();
      if (elems.empty()) return true;
      std::vector<std::optional<boost::dynamic_bitset<>>> up(elems.size());
      auto up_of = [&](std::size_t k) -> const boost::dynamic_bitset<>& {
        if (!up[k]) up[k] = GammaSet::principal(sg, elems[k]).bits();
        return *up[k];
      };
      // fold: c is a common ancestor of the elements seen so far
      std::size_t c = 0;
      for (std::size_t e = 1; e < elems.size(); ++e) {
        const auto ic = g.index_of(elems[c]), ie = g.index_of(elems[e]);
        std::size_t found = elems.size();
        for (std::size_t k = 0; k < elems.size(); ++k) {
          const auto& u = up_of(k);
          if (u.test(ic) && u.test(ie)) {
            found = k;
            break;
          }
        }
        if (found == elems.size()) return false;
        c = found;
      }
      return true;
    }
    case GammaSet::Kind::Generated: break;
  }
  const auto gens = x.generators();
  const auto pairs = common_ancestor_monoid(sg);
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      bool found = false;
      for (const auto& p : x.points()) {
        if (sg.member(g.sub(gens[i], p)) && sg.member(g.sub(gens[j], p))) {
          found = true;
          break;
        }
      }
      for (std::size_t b = 0; b < x.bases().size() && !found; ++b) {
        const auto& base = x.bases()[b];
        found = pairs.member(square_elem(g, g.sub(gens[i], base), g.sub(gens[j], base)));
      }
      if (!found) return false;
    }
  }
  return true;
}

std::optional<GroupElem> principal_base(const GammaSet& x) {
  const auto& sg = x.semigroup();
  switch (x.kind()) {
    case GammaSet::Kind::Empty: return std::nullopt;
    case GammaSet::Kind::Full:
      if (sg.is_full_group()) return x.group().zero();
      return std::nullopt;
    default: break;
  }
  for (const auto& c : x.generators()) {
    if (x == GammaSet::principal(sg, c)) return c;
  }
  return std::nullopt;
}

bool is_prime_pair(const InvariantPair& p) {
  const auto h = h_set(p.x);
  if (p.xinf == h && is_prime_set(p.x)) return true;
  if (p.xinf.kind() == GammaSet::Kind::Full) return false;
  const auto& sg = p.x.semigroup();
  for (const auto& c : p.xinf.generators()) {
    if (h.contains(c)) continue;
    const auto single = GammaSet::finite(sg, {c});
    if (p.xinf == h.unite(single) && p.x == GammaSet::principal(sg, c)) return true;
  }
  return false;
}

bool IdealLattice::ideal_contains(std::size_t i, std::size_t j) const {
  return nodes[j].x.subset_of(nodes[i].x) && nodes[j].xinf.subset_of(nodes[i].xinf);
}

std::size_t IdealLattice::find(const InvariantPair& p) const {
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    if (nodes[k] == p) return k;
  }
  fail(ErrorKind::InternalInvariantBroken, "pair (" + p.x.to_string() + ", " + p.xinf.to_string() +
                                               ") is not a lattice node");
}

std::size_t IdealLattice::meet(std::size_t i, std::size_t j) const { return find(pair_union(nodes[i], nodes[j])); }

std::size_t IdealLattice::join(std::size_t i, std::size_t j) const {
  return find(pair_intersection(nodes[i], nodes[j]));
}

std::size_t IdealLattice::zero_ideal() const {
  const auto& sg = nodes.front().x.semigroup();
  return find(InvariantPair{GammaSet::full(sg), GammaSet::full(sg)});
}

std::size_t IdealLattice::whole_algebra() const {
  const auto& sg = nodes.front().x.semigroup();
  return find(InvariantPair{GammaSet::empty(sg), GammaSet::empty(sg)});
}

IdealLattice enumerate_ideals(const Semigroup& sg, EnumOptions options) {
  IdealLattice lat;
  lat.condition = check_condition(sg);
  lat.nodes = enumerate_pairs(sg, options);
  lat.primitive.reserve(lat.nodes.size());
  for (const auto& p : lat.nodes) lat.primitive.push_back(!p.x.is_empty() && is_prime_pair(p));
  lat.complete = lat.condition.satisfied();
  if (!lat.complete) {
    lat.note = "only gauge-invariant ideals are listed; all ideals correspond to invariant Y-pairs over " +
               lat.condition.violation->quotient.to_string() + " x T";
  }
  return lat;
}

PrimReport prim_space(const Semigroup& sg, EnumOptions options) {
  PrimReport r;
  r.condition = check_condition(sg);
  const auto& g = sg.group();
  const bool finite = g.is_finite() && sg.has_table();
  if (r.condition.satisfied()) {
    if (finite) {
      r.enumerated = true;
      for (auto& p : enumerate_pairs(sg, options)) {
        if (!p.x.is_empty() && is_prime_pair(p)) r.prime_pairs.push_back(std::move(p));
      }
    } else {
      r.families.push_back("(gamma + sg, H_{gamma + sg} u {gamma}) for gamma in " + g.to_string());
      r.families.push_back("(X, H_X) for X prime invariant");
    }
    return r;
  }
  const auto& v = r.condition.violated();
  r.circle_component = v.quotient;
  r.point_component = g;
  if (finite) {
    r.delta_complete = true;
    for (auto& x : enumerate_invariant_sets(sg, options)) {
      if (!x.is_empty() && is_prime_set(x) && !is_principal(x)) r.delta.push_back(std::move(x));
    }
  } else {
    auto all = GammaSet::full(sg);
    if (is_prime_set(all) && !is_principal(all)) r.delta.push_back(std::move(all));
  }
  return r;
}

namespace {

std::vector<GroupElem> orbit(const GroupSpec& g, const GroupElem& start, const GroupElem& step, const Int& k) {
  std::vector<GroupElem> out;
  GroupElem y = start;
  for (Int i = 0; i < k; ++i) {
    out.push_back(y);
    y = g.add(y, step);
  }
  return out;
}

}  // namespace

YPair make_ypair(const ConditionReport& report, GammaSet full_cosets,
                 const std::vector<std::pair<GroupElem, Rational>>& points, GammaSet xinf) {
  const auto& v = report.violated();
  YPair y{std::move(full_cosets), {}, std::move(xinf)};
  for (const auto& [rep, theta] : points) {
    if (y.full_cosets.contains(rep)) continue;
    y.points.push_back(YPoint{rep, v.projection(rep), normalize_angle(theta)});
  }
  std::sort(y.points.begin(), y.points.end(), [](const YPoint& a, const YPoint& b) {
    if (a.cls != b.cls) return a.cls < b.cls;
    return a.theta < b.theta;
  });
  y.points.erase(std::unique(y.points.begin(), y.points.end(),
                             [](const YPoint& a, const YPoint& b) { return a.cls == b.cls && a.theta == b.theta; }),
                 y.points.end());
  return y;
}

YPair make_point_primitive(const Semigroup& sg, const ConditionReport& report, const GroupElem& gamma,
                           const Rational& theta) {
  const auto& v = report.violated();
  const auto& g = sg.group();
  std::vector<GroupElem> bases;
  for (const auto& u : sg.weights().values_except(v.index)) bases.push_back(g.add(gamma, u));
  auto full = GammaSet::generated(sg, std::move(bases), {});
  auto xinf = h_set(GammaSet::principal(sg, gamma));
  return make_ypair(report, std::move(full), {{gamma, theta}}, std::move(xinf));
}

YPair rotate(const YPair& y, const ConditionReport& report, const Rational& t) {
  const auto& v = report.violated();
  YPair out = y;
  for (auto& p : out.points) p.theta = normalize_angle(p.theta - Rational(v.order) * t);
  std::sort(out.points.begin(), out.points.end(), [](const YPoint& a, const YPoint& b) {
    if (a.cls != b.cls) return a.cls < b.cls;
    return a.theta < b.theta;
  });
  return out;
}

GammaSet ypair_x(const YPair& y, const ConditionReport& report) {
  const auto& v = report.violated();
  const auto& sg = y.full_cosets.semigroup();
  const auto& g = sg.group();
  const auto& step = sg.weights().weight(v.index);
  std::vector<GroupElem> pts;
  for (const auto& p : y.points) {
    for (auto& e : orbit(g, p.rep, step, v.order)) pts.push_back(std::move(e));
  }
  return y.full_cosets.unite(GammaSet::finite(sg, std::move(pts)));
}

bool validate_ypair(const YPair& y, const ConditionReport& report) {
  const auto& v = report.violated();
  if (!is_invariant(y.full_cosets)) return false;
  const auto x = ypair_x(y, report);
  if (!validate_pair(x, y.xinf)) return false;
  // [X^{(1)}] x T ⊆ Y, with X^{(1)} read as everything reachable from X
  // through an index other than the violating one
  const auto& sg = x.semigroup();
  GammaSet escape = y.xinf;
  for (const auto& u : sg.weights().values_except(v.index)) escape = escape.unite(x.translate(u));
  return escape.subset_of(y.full_cosets);
}

bool ypair_contains(const YPair& a, const YPair& b, const ConditionReport& report) {
  report.violated();
  if (!b.full_cosets.subset_of(a.full_cosets)) return false;
  for (const auto& p : b.points) {
    if (a.full_cosets.contains(p.rep)) continue;
    const bool listed = std::any_of(a.points.begin(), a.points.end(),
                                    [&](const YPoint& q) { return q.cls == p.cls && q.theta == p.theta; });
    if (!listed) return false;
  }
  return b.xinf.subset_of(a.xinf);
}

bool is_closed_in_prim(const Semigroup& sg, const YPair& y, const std::vector<GammaSet>& lambda,
                       EnumOptions options) {
  const auto prim = prim_space(sg, options);
  if (!validate_ypair(y, prim.condition)) return false;
  for (const auto& l : lambda) {
    if (l.is_empty() || !is_invariant(l) || !is_prime_set(l) || is_principal(l)) return false;
    if (!l.subset_of(y.full_cosets)) return false;
  }
  for (const auto& d : prim.delta) {
    if (!d.subset_of(y.full_cosets)) continue;
    if (std::none_of(lambda.begin(), lambda.end(), [&](const GammaSet& l) { return l == d; })) return false;
  }
  return true;
}

GammaSet connes_spectrum(const Semigroup& sg) {
  const auto zero = sg.group().zero();
  return h_set(GammaSet::principal(sg, zero)).unite(GammaSet::finite(sg, {zero}));
}

StructureFlags flags(const Semigroup& sg) {
  StructureFlags f;
  f.condition = check_condition(sg);
  f.simple = sg.is_full_group();
  f.purely_infinite = f.simple;
  f.primitive = subgroup_generated(sg.weights().distinct_values(), sg.group()).is_full();
  f.af_embeddable_sufficient = true;
  for (const auto& w : sg.weights().distinct_values()) {
    if (sg.member(sg.group().neg(w))) {
      f.af_embeddable_sufficient = false;
      break;
    }
  }
  return f;
}

KTheory k_theory(const GroupSpec& group) { return KTheory{group.order(), 0}; }

std::vector<Fiber> fiber_report(const InvariantPair& p, std::uint64_t n) {
  if (n == 0) fail(ErrorKind::Validation, "fiber level n must be positive");
  std::vector<Fiber> out;
  const auto xn = x_n(p, n);
  Int size = 1;
  for (std::uint64_t k = 0; k <= n; ++k) {
    out.push_back(Fiber{k, size, k < n ? xn : p.x});
    size *= n;
  }
  return out;
}

LocalSubquotients local_subquotients(const Semigroup& sg, const ConditionReport& report, const GroupElem& gamma0) {
  const auto& v = report.violated();
  const auto& g = sg.group();
  if (!g.is_valid(gamma0)) fail(ErrorKind::Validation, "element " + to_string(gamma0) + " is not in " + g.to_string());
  return LocalSubquotients{gamma0, 1, orbit(g, gamma0, sg.weights().weight(v.index), v.order)};
}

}  // namespace oinfty
