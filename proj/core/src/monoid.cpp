#include "oinfty/monoid.hpp"

#include <algorithm>
#include <deque>
#include <mutex>

#include "oinfty/detail/ilp.hpp"
#include "oinfty/error.hpp"

namespace oinfty {

namespace {

std::vector<GroupElem> sorted_unique(std::vector<GroupElem> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

WeightSystem::WeightSystem(GroupSpec group, std::vector<GroupElem> prefix, std::vector<GroupElem> tail)
    : group_(std::move(group)), prefix_(std::move(prefix)), tail_(std::move(tail)) {
  if (tail_.empty()) fail(ErrorKind::Validation, "weight tail is empty");
  for (const auto& w : prefix_) {
    if (!group_.is_valid(w)) fail(ErrorKind::Validation, "prefix weight " + oinfty::to_string(w) + " is not in " + group_.to_string());
  }
  for (const auto& w : tail_) {
    if (!group_.is_valid(w)) fail(ErrorKind::Validation, "tail weight " + oinfty::to_string(w) + " is not in " + group_.to_string());
  }
  auto all = prefix_;
  all.insert(all.end(), tail_.begin(), tail_.end());
  values_ = sorted_unique(std::move(all));
  tail_values_ = sorted_unique(tail_);
}

const GroupElem& WeightSystem::weight(std::uint64_t i) const {
  if (i == 0) fail(ErrorKind::Validation, "weight indices start at 1");
  if (i <= prefix_.size()) return prefix_[i - 1];
  return tail_[(i - prefix_.size() - 1) % tail_.size()];
}

std::vector<GroupElem> WeightSystem::values_except(std::uint64_t i) const {
  if (is_tail_index(i)) return values_;
  std::vector<GroupElem> v = tail_;
  for (std::size_t j = 0; j < prefix_.size(); ++j) {
    if (j + 1 != i) v.push_back(prefix_[j]);
  }
  return sorted_unique(std::move(v));
}

std::string WeightSystem::to_string() const {
  auto list = [](const std::vector<GroupElem>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) s += ", ";
      s += oinfty::to_string(v[i]);
    }
    return s + "]";
  };
  return group_.to_string() + " prefix=" + list(prefix_) + " tail=" + list(tail_);
}

GroupElem MembershipCertificate::total(const GroupSpec& group) const {
  GroupElem s = group.zero();
  for (const auto& [w, c] : counts) s = group.add(s, group.scale(c, w));
  return s;
}

struct Semigroup::State {
  WeightSystem weights;
  SearchOptions options;
  std::vector<GroupElem> generators;  // nonzero distinct values

  bool tabled = false;
  std::uint64_t order = 0;
  boost::dynamic_bitset<> table;
  std::vector<std::uint32_t> parent;      // index reached from
  std::vector<std::uint32_t> parent_gen;  // slot in distinct_values
  std::vector<std::vector<std::uint32_t>> translations;

  mutable std::once_flag group_once;
  mutable bool group_flag = false;

  State(WeightSystem w, SearchOptions o) : weights(std::move(w)), options(o) {}
};

Semigroup::Semigroup(WeightSystem weights, SearchOptions options) {
  auto st = std::make_shared<State>(std::move(weights), options);
  const auto& g = st->weights.group();
  const auto& values = st->weights.distinct_values();
  for (const auto& v : values) {
    if (!g.is_zero(v)) st->generators.push_back(v);
  }

  if (g.is_finite() && *g.order() <= options.table_limit) {
    st->tabled = true;
    const auto n = static_cast<std::uint64_t>(*g.order());
    st->order = n;
    const auto& tors = g.torsion();
    std::vector<std::uint64_t> mod(tors.size());
    for (std::size_t j = 0; j < tors.size(); ++j) mod[j] = static_cast<std::uint64_t>(tors[j]);

    std::vector<std::uint64_t> digits(tors.size());
    for (const auto& v : values) {
      std::vector<std::uint64_t> w(tors.size());
      for (std::size_t j = 0; j < tors.size(); ++j) w[j] = static_cast<std::uint64_t>(v.coords[j]);
      std::vector<std::uint32_t> tr(n);
      for (std::uint64_t idx = 0; idx < n; ++idx) {
        std::uint64_t rest = idx;
        for (std::size_t j = tors.size(); j-- > 0;) {
          digits[j] = rest % mod[j];
          rest /= mod[j];
        }
        std::uint64_t out = 0;
        for (std::size_t j = 0; j < tors.size(); ++j) out = out * mod[j] + (digits[j] + w[j]) % mod[j];
        tr[idx] = static_cast<std::uint32_t>(out);
      }
      st->translations.push_back(std::move(tr));
    }

    st->table.resize(n);
    st->parent.assign(n, 0);
    st->parent_gen.assign(n, 0);
    std::deque<std::uint32_t> queue{0};
    st->table.set(0);
    while (!queue.empty()) {
      const auto x = queue.front();
      queue.pop_front();
      for (std::size_t k = 0; k < values.size(); ++k) {
        const auto y = st->translations[k][x];
        if (st->table.test(y)) continue;
        st->table.set(y);
        st->parent[y] = x;
        st->parent_gen[y] = static_cast<std::uint32_t>(k);
        queue.push_back(y);
      }
    }
  }
  state_ = std::move(st);
}

const WeightSystem& Semigroup::weights() const { return state_->weights; }
const SearchOptions& Semigroup::options() const { return state_->options; }
bool Semigroup::has_table() const { return state_->tabled; }

const boost::dynamic_bitset<>& Semigroup::table() const {
  if (!state_->tabled) {
    const auto& g = group();
    if (!g.is_finite()) fail(ErrorKind::NotFinite, "closure table needs a finite group, got " + g.to_string());
    fail(ErrorKind::SizeLimit, "group " + g.to_string() + " is above the closure table limit " +
                                   std::to_string(state_->options.table_limit));
  }
  return state_->table;
}

std::uint64_t Semigroup::order() const {
  table();
  return state_->order;
}

const std::vector<std::uint32_t>& Semigroup::translation(std::size_t k) const {
  table();
  return state_->translations.at(k);
}

std::optional<MembershipCertificate> Semigroup::contains(const GroupElem& x) const {
  const auto& g = group();
  if (!g.is_valid(x)) fail(ErrorKind::Validation, "query " + to_string(x) + " is not in " + g.to_string());
  MembershipCertificate cert;
  if (g.is_zero(x)) return cert;

  if (state_->tabled) {
    auto idx = static_cast<std::uint32_t>(g.index_of(x));
    if (!state_->table.test(idx)) return std::nullopt;
    const auto& values = weights().distinct_values();
    while (idx != 0) {
      cert.counts[values[state_->parent_gen[idx]]] += 1;
      idx = state_->parent[idx];
    }
    return cert;
  }

  detail::SearchBudget budget{state_->options.budget};
  auto counts = detail::solve_nonnegative(g, state_->generators, x, budget);
  if (!counts) return std::nullopt;
  for (std::size_t k = 0; k < counts->size(); ++k) {
    if ((*counts)[k] != 0) cert.counts[state_->generators[k]] = (*counts)[k];
  }
  if (cert.total(g) != x) {
    fail(ErrorKind::InternalInvariantBroken, "membership certificate for " + to_string(x) + " does not sum back");
  }
  return cert;
}

bool Semigroup::contains_excluding(std::uint64_t i, const GroupElem& x) const {
  const auto& g = group();
  for (const auto& u : weights().values_except(i)) {
    if (member(g.sub(x, u))) return true;
  }
  return false;
}

bool Semigroup::is_group() const {
  std::call_once(state_->group_once, [this] {
    bool ok = true;
    for (const auto& w : state_->generators) {
      if (!member(group().neg(w))) {
        ok = false;
        break;
      }
    }
    state_->group_flag = ok;
  });
  return state_->group_flag;
}

bool Semigroup::is_full_group() const {
  if (state_->tabled) return state_->table.count() == state_->order;
  return is_group() && subgroup_generated(weights().distinct_values(), group()).is_full();
}

std::optional<MembershipCertificate> contains(const WeightSystem& w, const GroupElem& x, SearchOptions options) {
  return Semigroup(w, options).contains(x);
}

bool sg1_contains(const WeightSystem& w, std::uint64_t i, const GroupElem& x, SearchOptions options) {
  return Semigroup(w, options).contains_excluding(i, x);
}

boost::dynamic_bitset<> closure_table(const WeightSystem& w) {
  if (!w.group().is_finite()) fail(ErrorKind::NotFinite, "closure table needs a finite group, got " + w.group().to_string());
  return Semigroup(w).table();
}

bool is_full_group(const WeightSystem& w, SearchOptions options) { return Semigroup(w, options).is_full_group(); }

}  // namespace oinfty
