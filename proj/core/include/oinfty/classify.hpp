#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "oinfty/invariant.hpp"

namespace oinfty {

using Rational = boost::multiprecision::cpp_rational;

/// Reduces an angle (in turns) into [0, 1).
Rational normalize_angle(const Rational& theta);
/// "p/q" with q >= 1, e.g. "0/1", "3/4".
std::string angle_to_string(const Rational& theta);
/// Accepts "p/q" or an integer; Validation otherwise.
Rational parse_rational(const std::string& text);

struct Violation {
  std::uint64_t index = 0;  // 1-based
  Int order;                // K, the order of the violating weight
  GroupSpec quotient;       // Γ' = Γ / <ω_index>
  Projection projection;    // γ -> [γ]
};

struct ConditionReport {
  std::optional<Violation> violation;

  bool satisfied() const { return !violation.has_value(); }
  /// ConditionNotViolated when satisfied.
  const Violation& violated() const;
};

/// Index i fails iff ω_i has finite order and -u ∉ sg(ω) for every value u
/// occurring at an index other than i.
ConditionReport check_condition(const Semigroup& sg);

/// Every two elements of X lie in γ + sg(ω) for one γ ∈ X.
bool is_prime_set(const GammaSet& x);
/// Some γ with X = γ + sg(ω).
std::optional<GroupElem> principal_base(const GammaSet& x);
inline bool is_principal(const GammaSet& x) { return principal_base(x).has_value(); }
/// Either X is prime and X^{(∞)} = H_X, or X = γ + sg(ω) and
/// X^{(∞)} = H_X ∪ {γ} with γ ∉ H_X.
bool is_prime_pair(const InvariantPair& p);

/// Gauge-invariant ideals of a finite instance, one node per valid pair.
/// Larger pairs are smaller ideals.
struct IdealLattice {
  std::vector<InvariantPair> nodes;
  std::vector<bool> primitive;
  ConditionReport condition;
  /// True when every ideal is gauge invariant, so the nodes are all ideals.
  bool complete = true;
  std::string note;

  std::size_t size() const { return nodes.size(); }
  /// I_i ⊆ I_j.
  bool ideal_contains(std::size_t i, std::size_t j) const;
  std::size_t find(const InvariantPair& p) const;
  /// I_i ∩ I_j and I_i + I_j.
  std::size_t meet(std::size_t i, std::size_t j) const;
  std::size_t join(std::size_t i, std::size_t j) const;
  std::size_t zero_ideal() const;
  std::size_t whole_algebra() const;
};

IdealLattice enumerate_ideals(const Semigroup& sg, EnumOptions options = {});

struct PrimReport {
  ConditionReport condition;
  /// Satisfied regime on a finite group: every prime pair is listed.
  bool enumerated = false;
  std::vector<InvariantPair> prime_pairs;
  /// Parameterized families when no finite listing exists.
  std::vector<std::string> families;
  /// Violated regime: Γ' x T, then Γ, then Δ.
  GroupSpec circle_component;
  GroupSpec point_component;
  std::vector<GammaSet> delta;
  bool delta_complete = false;
};

PrimReport prim_space(const Semigroup& sg, EnumOptions options = {});

struct YPoint {
  GroupElem rep;    // a lift γ ∈ Γ
  GroupElem cls;    // [γ] ∈ Γ'
  Rational theta;   // in [0, 1)
};

/// Ideal datum when the condition fails: Y ⊆ Γ' x T is the union of the
/// full circles over the classes of `full_cosets` and the listed points.
struct YPair {
  GammaSet full_cosets;  // subset of Γ saturated under <ω_i>
  std::vector<YPoint> points;
  GammaSet xinf;
};

YPair make_ypair(const ConditionReport& report, GammaSet full_cosets,
                 const std::vector<std::pair<GroupElem, Rational>>& points, GammaSet xinf);
/// P_{([γ],θ)}: Y = {([γ],θ)} ∪ [γ + sg₁]xT and X^{(∞)} = H_{γ+sg}.
YPair make_point_primitive(const Semigroup& sg, const ConditionReport& report, const GroupElem& gamma,
                           const Rational& theta);
/// β_t acts by θ -> θ - K t.
YPair rotate(const YPair& y, const ConditionReport& report, const Rational& t);
/// The invariant set X lying under Y.
GammaSet ypair_x(const YPair& y, const ConditionReport& report);
bool validate_ypair(const YPair& y, const ConditionReport& report);
/// I_{a} ⊆ I_{b}, i.e. Y_a ⊇ Y_b and X^{(∞)}_a ⊇ X^{(∞)}_b.
bool ypair_contains(const YPair& a, const YPair& b, const ConditionReport& report);
/// Closed subsets of Prim given by (Y, X^{(∞)}) and Λ ⊆ Δ.
bool is_closed_in_prim(const Semigroup& sg, const YPair& y, const std::vector<GammaSet>& lambda,
                       EnumOptions options = {});

/// {0} ∪ H_{sg(ω)}.
GammaSet connes_spectrum(const Semigroup& sg);

struct StructureFlags {
  bool simple = false;
  bool purely_infinite = false;
  bool primitive = false;
  /// Sufficient condition only; false says nothing.
  bool af_embeddable_sufficient = false;
  ConditionReport condition;
};

StructureFlags flags(const Semigroup& sg);

struct KTheory {
  /// nullopt means countably infinite rank.
  std::optional<Int> k0_rank;
  Int k1_rank = 0;
};

KTheory k_theory(const GroupSpec& group);

struct Fiber {
  std::uint64_t k = 0;
  Int matrix_size;  // n^k
  GammaSet spectrum;
};

/// k = 0..n: M_{n^k} over X^{(n)} for k < n and over X for k = n.
std::vector<Fiber> fiber_report(const InvariantPair& p, std::uint64_t n);

struct LocalSubquotients {
  GroupElem gamma;
  /// Upper quotient: one circle per point of X = {γ0}.
  std::size_t circles = 1;
  /// Lower quotient: compacts over γ0, γ0 + ω_i, ..., γ0 + (K-1)ω_i.
  std::vector<GroupElem> points;
};

LocalSubquotients local_subquotients(const Semigroup& sg, const ConditionReport& report, const GroupElem& gamma0);

}  // namespace oinfty
