// Acceptance run: one line per criterion, nonzero exit if any fails.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "grid.hpp"
#include "oinfty/error.hpp"
#include "oracle.hpp"

using namespace oinfty;
using oracle::Mask;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// collects mismatches, keeping the first few messages
class Tally {
 public:
  void check(bool ok, const std::string& what) {
    ++checks_;
    if (ok) return;
    if (++failures_ <= 3) first_ += (first_.empty() ? "" : "; ") + what;
  }
  std::size_t checks() const { return checks_; }
  std::size_t failures() const { return failures_; }
  Outcome outcome(const std::string& summary) const {
    std::string d = summary + ", " + std::to_string(checks_) + " checks, " + std::to_string(failures_) + " mismatches";
    if (failures_) d += " (" + first_ + ")";
    return Outcome{failures_ == 0, d};
  }

 private:
  std::size_t checks_ = 0, failures_ = 0;
  std::string first_;
};

const GroupSpec Z = GroupSpec::free(1);

Semigroup zsg(const std::vector<long long>& prefix, const std::vector<long long>& tail) {
  std::vector<GroupElem> p, t;
  for (auto x : prefix) p.push_back(Z.elem({x}));
  for (auto x : tail) t.push_back(Z.elem({x}));
  return Semigroup(WeightSystem(Z, p, t));
}

oracle::Window window(const GammaSet& s, long long lo, long long hi) {
  oracle::Window w(lo, hi);
  for (long long x = lo; x <= hi; ++x) {
    if (s.contains(Z.elem({x}))) w.set(x);
  }
  return w;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt_seconds(double s) {
  std::ostringstream o;
  o.precision(2);
  o << std::fixed << s << " s";
  return o.str();
}

const std::vector<testgrid::Instance>& grid() {
  static const auto g = testgrid::make_grid();
  return g;
}

Outcome ideal_count_identity() {
  Tally t;
  double library = 0;
  const auto start = std::chrono::steady_clock::now();
  for (const auto& inst : grid()) {
    Semigroup sg(inst.weights);
    const auto t0 = std::chrono::steady_clock::now();
    const auto lat = enumerate_ideals(sg);
    const Int formula = count_pairs(sg);
    library += seconds_since(t0);
    const auto brute = oracle::oracle_pairs(inst.plain).size();
    t.check(lat.size() == brute && formula == Int(brute), inst.name);
  }
  const double total = seconds_since(start);
  auto o = t.outcome(std::to_string(grid().size()) + " instances, library time " + fmt_seconds(library) +
                     ", with oracle " + fmt_seconds(total));
  if (total >= 10.0) {
    o.pass = false;
    o.detail += "; over the 10 s limit";
  }
  return o;
}

Outcome prime_characterization() {
  Tally t;
  for (const auto& inst : grid()) {
    Semigroup sg(inst.weights);
    const auto& og = inst.plain.group;
    const auto sets = oracle::oracle_invariant_sets(inst.plain);
    for (const auto& x : enumerate_invariant_sets(sg)) {
      t.check(is_prime_set(x) == oracle::oracle_prime(testgrid::to_mask(x, og), sets), inst.name + " X=" + x.to_string());
    }
    const auto pairs = oracle::oracle_pairs(inst.plain);
    for (const auto& p : enumerate_pairs(sg)) {
      const std::pair<Mask, Mask> m{testgrid::to_mask(p.x, og), testgrid::to_mask(p.xinf, og)};
      t.check(is_prime_pair(p) == oracle::oracle_pair_prime(m, pairs), inst.name + " pair X=" + p.x.to_string());
    }
  }
  return t.outcome(std::to_string(grid().size()) + " instances");
}

Outcome h_and_xn_formulas() {
  Tally t;
  for (const auto& inst : grid()) {
    Semigroup sg(inst.weights);
    const auto& og = inst.plain.group;
    const std::uint64_t top = inst.weights.prefix_length() + 2;
    for (const auto& p : enumerate_pairs(sg)) {
      const Mask x = testgrid::to_mask(p.x, og), xi = testgrid::to_mask(p.xinf, og);
      t.check(testgrid::to_mask(h_set(p.x), og) == oracle::oracle_h_set(inst.plain, x), inst.name + " H");
      for (std::uint64_t n = 0; n <= top; ++n) {
        t.check(testgrid::to_mask(x_n(p, n), og) == oracle::oracle_x_n(inst.plain, x, xi, static_cast<long long>(n)),
                inst.name + " X^(" + std::to_string(n) + ")");
      }
    }
  }
  const std::vector<std::pair<std::vector<long long>, std::vector<long long>>> systems{
      {{}, {1}}, {{0}, {1}}, {{}, {2, 3}}};
  for (const auto& [pre, tail] : systems) {
    auto sg = zsg(pre, tail);
    const oracle::IntSystem plain{pre, tail};
    for (long long b = -3; b <= 3; ++b) {
      const auto x = GammaSet::principal(sg, Z.elem({b}));
      const auto ox = window(x, -40, 70);
      const auto h = h_set(x);
      t.check(window(h, -5, 30).elements() == oracle::oracle_h_set_z(plain, ox, -5, 30).elements(),
              sg.weights().to_string() + " H on Z");
      for (const auto& xinf : {h, x}) {
        for (long long n = 0; n <= 3; ++n) {
          const auto expect = oracle::oracle_x_n_z(plain, ox, window(xinf, -40, 70), n, -5, 30);
          t.check(window(x_n({x, xinf}, static_cast<std::uint64_t>(n)), -5, 30).elements() == expect.elements(),
                  sg.weights().to_string() + " X^(n) on Z");
        }
      }
    }
  }
  return t.outcome("grid plus three systems on Z over [-5, 30]");
}

Outcome xn_decomposition() {
  Tally t;
  for (const auto& inst : grid()) {
    Semigroup sg(inst.weights);
    const auto& og = inst.plain.group;
    for (const auto& p : enumerate_pairs(sg)) {
      const Mask x = testgrid::to_mask(p.x, og);
      for (long long n = 1; n <= 3; ++n) {
        const Mask xn = testgrid::to_mask(x_n(p, static_cast<std::uint64_t>(n)), og);
        const Mask rhs = oracle::oracle_word_translates(inst.plain, xn, n) | oracle::oracle_word_limit(inst.plain, x, n);
        t.check(rhs == x, inst.name + " n=" + std::to_string(n));
      }
    }
  }
  return t.outcome("n = 1, 2, 3 on every grid pair");
}

int cli_exit_code(const std::string& args) {
  const int status = std::system((std::string(OINFTY_CLI_PATH) + " " + args + " >/dev/null 2>&1").c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string instance_json(const testgrid::Instance& inst) {
  auto coords = [&](int idx) {
    std::string s = "[";
    const auto c = inst.plain.group.coords(idx);
    for (std::size_t i = 0; i < c.size(); ++i) s += (i ? ", " : "") + std::to_string(c[i]);
    return s + "]";
  };
  auto list = [&](const std::vector<int>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + coords(v[i]);
    return s + "]";
  };
  std::string tors = "[";
  for (std::size_t i = 0; i < inst.plain.group.moduli.size(); ++i) {
    tors += (i ? ", " : "") + std::to_string(inst.plain.group.moduli[i]);
  }
  tors += "]";
  return "{\"group\": {\"free_rank\": 0, \"torsion\": " + tors + "}, \"weights\": {\"prefix\": " + list(inst.plain.prefix) +
         ", \"tail\": " + list(inst.plain.tail) + "}}";
}

struct ScratchDir {
  std::filesystem::path path;
  ScratchDir() : path(std::filesystem::temp_directory_path() / ("oinfty_acceptance_" + std::to_string(::getpid()))) {
    std::filesystem::create_directories(path);
  }
  ~ScratchDir() { std::filesystem::remove_all(path); }
  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(path / name) << text;
    return (path / name).string();
  }
};

Outcome condition_checker() {
  Tally t;
  const auto v = check_condition(zsg({0}, {1}));
  t.check(v.violation && v.violation->index == 1 && v.violation->order == 1 && v.violation->quotient == Z,
          "{Z, prefix [0], tail [1]} should violate at 1 with K = 1 and quotient Z");
  const GroupSpec z2(0, {2});
  t.check(check_condition(Semigroup(WeightSystem(z2, {}, {z2.elem({1})}))).satisfied(), "{Z/2, tail [1]}");
  t.check(check_condition(zsg({}, {1})).satisfied(), "{Z, tail [1]}");
  std::size_t internal = 0;
  for (const auto& inst : grid()) {
    try {
      check_condition(Semigroup(inst.weights));
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::InternalInvariantBroken) ++internal;
      t.check(false, inst.name + ": " + e.what());
    }
  }
  t.check(internal == 0, "internal invariant broken on the grid");
  ScratchDir d;
  for (std::size_t k = 0; k < grid().size(); k += 97) {
    const auto path = d.write("g" + std::to_string(k) + ".json", instance_json(grid()[k]));
    t.check(cli_exit_code("condition " + path) == 0, grid()[k].name + " CLI exit code");
  }
  t.check(cli_exit_code("condition " + d.write("zv.json", R"({"group": {"free_rank": 1}, "weights": {"prefix": [[0]], "tail": [[1]]}})")) == 0,
          "CLI on the violated Z system");
  return t.outcome("desk cases, uniqueness over the grid, CLI on every 97th instance");
}

Outcome connes_spectrum_formula() {
  Tally t;
  for (const auto& inst : grid()) {
    Semigroup sg(inst.weights);
    const Mask expect = oracle::oracle_invariance_set(inst.plain.group, oracle::oracle_pairs(inst.plain));
    t.check(testgrid::to_mask(connes_spectrum(sg), inst.plain.group) == expect, inst.name);
  }
  auto nat = zsg({}, {1});
  const auto s = connes_spectrum(nat);
  for (long long x = -30; x <= 30; ++x) t.check(s.contains(Z.elem({x})) == (x >= 0), "{Z, tail [1]} at " + std::to_string(x));
  return t.outcome("grid plus {Z, tail [1]} on [-30, 30]");
}

Outcome simplicity_triple_check() {
  Tally t;
  std::size_t simple = 0;
  for (const auto& inst : grid()) {
    Semigroup sg(inst.weights);
    const bool full = is_full_group(inst.weights);
    const bool two = enumerate_ideals(sg).size() == 2;
    const bool spectrum = connes_spectrum(sg).is_full();
    simple += full ? 1 : 0;
    t.check(full == two && two == spectrum, inst.name);
  }
  return t.outcome(std::to_string(simple) + " simple instances");
}

Outcome monoid_certificates() {
  Tally t;
  for (const auto& inst : grid()) {
    Semigroup sg(inst.weights);
    const auto& g = sg.group();
    for (std::uint64_t k = 0; k < sg.order(); ++k) {
      const auto x = g.element_at(k);
      if (auto c = sg.contains(x)) t.check(c->total(g) == x, inst.name + " certificate");
    }
  }
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> entry(-5, 7), len(1, 3);
  const auto z2 = GroupSpec::free(2);
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<GroupElem> gens;
    for (int i = len(rng); i > 0; --i) gens.push_back(z2.elem({entry(rng), entry(rng)}));
    Semigroup sg(WeightSystem(z2, {}, gens));
    for (long long a = -3; a <= 3; ++a) {
      for (long long b = -3; b <= 3; ++b) {
        const auto x = z2.elem({a, b});
        if (auto c = sg.contains(x)) t.check(c->total(z2) == x, "Z^2 certificate");
      }
    }
  }
  auto two_three = zsg({}, {2, 3});
  std::set<long long> sums;
  oracle::WordEnumerator(2, 15).for_each([&](const std::vector<int>& w) {
    long long s = 0;
    for (int a : w) s += a == 1 ? 2 : 3;
    sums.insert(s);
  });
  std::set<long long> complement, oracle_complement;
  for (long long x = 0; x <= 30; ++x) {
    if (auto c = two_three.contains(Z.elem({x}))) {
      t.check(c->total(Z) == Z.elem({x}), "<2,3> certificate");
    } else {
      complement.insert(x);
    }
    if (!sums.count(x)) oracle_complement.insert(x);
  }
  t.check(complement == std::set<long long>{1} && complement == oracle_complement, "complement of <2,3> in [0, 30]");
  return t.outcome("grid, random systems on Z^2, <2,3> on [0, 30]");
}

Outcome violated_structure() {
  Tally t;
  auto sg = zsg({0}, {1});
  const auto r = check_condition(sg);
  const auto prim = prim_space(sg);
  t.check(!prim.condition.satisfied() && prim.circle_component == Z && prim.point_component == Z, "Prim components");
  t.check(prim.delta.size() == 1 && prim.delta[0].is_full(), "Delta = {Z}");

  std::mt19937 rng(2024);
  std::uniform_int_distribution<int> num(-50, 50), den(1, 24), base(-5, 5);
  for (int k = 0; k < 20; ++k) {
    const Rational theta(num(rng), den(rng)), step(num(rng), den(rng));
    const auto gamma = Z.elem({base(rng)});
    const auto y = make_point_primitive(sg, r, gamma, theta);
    t.check(validate_ypair(y, r), "point primitive validates");
    const auto rotated = rotate(y, r, step);
    const auto expect = make_point_primitive(sg, r, gamma, theta - Rational(r.violated().order) * step);
    bool same = rotated.full_cosets == expect.full_cosets && rotated.xinf == expect.xinf &&
                rotated.points.size() == expect.points.size();
    for (std::size_t i = 0; same && i < rotated.points.size(); ++i) {
      same = rotated.points[i].cls == expect.points[i].cls && rotated.points[i].theta == expect.points[i].theta;
    }
    t.check(same, "rotation by " + angle_to_string(step));
  }

  std::vector<YPair> sample;
  for (long long g = -2; g <= 3; ++g) {
    for (const auto& th : {Rational(0), Rational(1, 2), Rational(1, 3), Rational(2, 3), Rational(1, 4)}) {
      sample.push_back(make_point_primitive(sg, r, Z.elem({g}), th));
    }
  }
  const std::size_t n = sample.size();
  for (std::size_t a = 0; a < n; ++a) {
    t.check(ypair_contains(sample[a], sample[a], r), "reflexive");
    for (std::size_t b = 0; b < n; ++b) {
      const bool ab = ypair_contains(sample[a], sample[b], r);
      if (a != b) t.check(!(ab && ypair_contains(sample[b], sample[a], r)), "antisymmetric");
      if (!ab) continue;
      for (std::size_t c = 0; c < n; ++c) {
        if (ypair_contains(sample[b], sample[c], r)) t.check(ypair_contains(sample[a], sample[c], r), "transitive");
      }
    }
  }
  return t.outcome("Prim of {Z, prefix [0], tail [1]}, 20 rotations, " + std::to_string(n) + "-element order sample");
}

Outcome cli_determinism() {
  Tally t;
  ScratchDir d;
  const std::size_t stride = grid().size() / 10;
  for (std::size_t k = 0; k < 10; ++k) {
    const auto& inst = grid()[k * stride + k];
    const auto path = d.write("i" + std::to_string(k) + ".json", instance_json(inst));
    std::string first;
    for (int run = 0; run < 5; ++run) {
      FILE* pipe = ::popen((std::string(OINFTY_CLI_PATH) + " analyze --format json " + path).c_str(), "r");
      std::string out;
      char buf[4096];
      while (std::size_t got = std::fread(buf, 1, sizeof buf, pipe)) out.append(buf, got);
      const int status = ::pclose(pipe);
      t.check(WIFEXITED(status) && WEXITSTATUS(status) == 0 && !out.empty(), inst.name + " exit status");
      if (run == 0) first = out;
      t.check(out == first, inst.name + " output differs on run " + std::to_string(run));
    }
  }
  return t.outcome("10 instances x 5 runs");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"ideal-count identity", ideal_count_identity},
      {"prime characterization", prime_characterization},
      {"H_X and X^(n) formulas", h_and_xn_formulas},
      {"X^(n) decomposition identity", xn_decomposition},
      {"condition checker", condition_checker},
      {"strong Connes spectrum", connes_spectrum_formula},
      {"simplicity triple-check", simplicity_triple_check},
      {"monoid certificates", monoid_certificates},
      {"violated-regime structure", violated_structure},
      {"CLI determinism", cli_determinism},
  };
  std::cout << "grid: " << grid().size() << " finite instances\n";
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = Outcome{false, std::string("uncaught exception: ") + e.what()};
    }
    std::cout << (o.pass ? "PASS" : "FAIL") << "  " << (i + 1) << ". " << criteria[i].first << ": " << o.detail << " ["
              << fmt_seconds(seconds_since(t0)) << "]\n"
              << std::flush;
    failed += o.pass ? 0 : 1;
  }
  std::cout << (failed ? std::to_string(failed) + " criteria failed\n" : "all criteria passed\n");
  return failed ? 1 : 0;
}
