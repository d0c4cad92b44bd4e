#include "oinfty/abelian.hpp"

#include <boost/integer/common_factor.hpp>

#include "oinfty/detail/lattice.hpp"
#include "oinfty/error.hpp"

namespace oinfty {

using detail::mod_floor;

GroupSpec::GroupSpec(std::size_t free_rank, std::vector<Int> torsion)
    : free_rank_(free_rank), torsion_(std::move(torsion)) {
  for (std::size_t j = 0; j < torsion_.size(); ++j) {
    if (torsion_[j] < 2) fail(ErrorKind::Validation, "torsion factor " + torsion_[j].str() + " is below 2");
    if (j + 1 < torsion_.size() && torsion_[j + 1] % torsion_[j] != 0) {
      fail(ErrorKind::Validation, "torsion factor " + torsion_[j].str() + " does not divide " + torsion_[j + 1].str());
    }
  }
}

std::optional<Int> GroupSpec::order() const {
  if (free_rank_ > 0) return std::nullopt;
  Int n = 1;
  for (const auto& t : torsion_) n *= t;
  return n;
}

std::uint64_t GroupSpec::finite_order(std::uint64_t cap) const {
  if (free_rank_ > 0) fail(ErrorKind::NotFinite, "group " + to_string() + " has free rank " + std::to_string(free_rank_));
  const Int n = *order();
  if (n > cap) fail(ErrorKind::SizeLimit, "group " + to_string() + " has order " + n.str() + " above " + std::to_string(cap));
  return static_cast<std::uint64_t>(n);
}

GroupElem GroupSpec::elem(IntVector raw) const {
  if (raw.size() != dim()) {
    fail(ErrorKind::Validation, "element has " + std::to_string(raw.size()) + " coordinates, group " + to_string() +
                                    " needs " + std::to_string(dim()));
  }
  for (std::size_t j = 0; j < torsion_.size(); ++j) {
    auto& c = raw[free_rank_ + j];
    c = mod_floor(c, torsion_[j]);
  }
  return GroupElem{std::move(raw)};
}

GroupElem GroupSpec::elem(std::initializer_list<long long> raw) const {
  IntVector v;
  v.reserve(raw.size());
  for (long long x : raw) v.emplace_back(x);
  return elem(std::move(v));
}

GroupElem GroupSpec::zero() const { return GroupElem{IntVector(dim(), 0)}; }

GroupElem GroupSpec::add(const GroupElem& a, const GroupElem& b) const {
  IntVector v(dim());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.coords[i] + b.coords[i];
  return elem(std::move(v));
}

GroupElem GroupSpec::neg(const GroupElem& a) const {
  IntVector v(dim());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = -a.coords[i];
  return elem(std::move(v));
}

GroupElem GroupSpec::sub(const GroupElem& a, const GroupElem& b) const {
  IntVector v(dim());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.coords[i] - b.coords[i];
  return elem(std::move(v));
}

GroupElem GroupSpec::scale(const Int& k, const GroupElem& a) const {
  IntVector v(dim());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = k * a.coords[i];
  return elem(std::move(v));
}

bool GroupSpec::is_zero(const GroupElem& a) const {
  for (const auto& c : a.coords) {
    if (c != 0) return false;
  }
  return true;
}

bool GroupSpec::is_valid(const GroupElem& a) const {
  if (a.coords.size() != dim()) return false;
  for (std::size_t j = 0; j < torsion_.size(); ++j) {
    const auto& c = a.coords[free_rank_ + j];
    if (c < 0 || c >= torsion_[j]) return false;
  }
  return true;
}

std::uint64_t GroupSpec::index_of(const GroupElem& a) const {
  std::uint64_t idx = 0;
  for (std::size_t j = 0; j < torsion_.size(); ++j) {
    idx = idx * static_cast<std::uint64_t>(torsion_[j]) + static_cast<std::uint64_t>(a.coords[free_rank_ + j]);
  }
  return idx;
}

GroupElem GroupSpec::element_at(std::uint64_t index) const {
  IntVector v(dim(), 0);
  for (std::size_t j = torsion_.size(); j-- > 0;) {
    const auto n = static_cast<std::uint64_t>(torsion_[j]);
    v[free_rank_ + j] = index % n;
    index /= n;
  }
  return GroupElem{std::move(v)};
}

std::string GroupSpec::to_string() const {
  std::string s;
  if (free_rank_ == 1) s = "Z";
  if (free_rank_ > 1) s = "Z^" + std::to_string(free_rank_);
  for (const auto& t : torsion_) {
    if (!s.empty()) s += " + ";
    s += "Z/" + t.str();
  }
  return s.empty() ? "0" : s;
}

std::optional<Int> order_of(const GroupElem& g, const GroupSpec& group) {
  for (std::size_t i = 0; i < group.free_rank(); ++i) {
    if (g.coords[i] != 0) return std::nullopt;
  }
  Int k = 1;
  for (std::size_t j = 0; j < group.torsion().size(); ++j) {
    const Int& n = group.torsion()[j];
    const Int c = g.coords[group.free_rank() + j];
    const Int ord = n / boost::integer::gcd(c, n);
    k = boost::integer::lcm(k, ord);
  }
  return k;
}

GroupElem Projection::apply_raw(const IntVector& raw) const {
  IntVector y(rows.size(), 0);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t c = 0; c < raw.size(); ++c) y[i] += rows[i][c] * raw[c];
  }
  return target.elem(std::move(y));
}

GroupElem Projection::operator()(const GroupElem& x) const { return apply_raw(x.coords); }

Presentation normalize(std::size_t rank, const IntMatrix& relations) {
  for (const auto& r : relations) {
    if (r.size() != rank) {
      fail(ErrorKind::Validation, "relation row has " + std::to_string(r.size()) + " entries, rank is " + std::to_string(rank));
    }
  }
  const auto snf = detail::smith_normal_form(relations, rank);
  const auto& v = snf.column_transform;
  auto diag = [&](std::size_t k) -> Int { return k < snf.diagonal.size() ? snf.diagonal[k] : Int(0); };

  std::vector<std::size_t> free_cols, torsion_cols;
  std::vector<Int> torsion;
  for (std::size_t k = 0; k < rank; ++k) {
    const Int d = diag(k);
    if (d == 0) {
      free_cols.push_back(k);
    } else if (d != 1) {
      torsion_cols.push_back(k);
      torsion.push_back(d);
    }
  }
  Presentation p;
  p.group = GroupSpec(free_cols.size(), torsion);
  p.projection.target = p.group;
  auto column = [&](std::size_t k) {
    IntVector row(rank);
    for (std::size_t c = 0; c < rank; ++c) row[c] = v[c][k];
    return row;
  };
  for (auto k : free_cols) p.projection.rows.push_back(column(k));
  for (auto k : torsion_cols) p.projection.rows.push_back(column(k));
  return p;
}

Subgroup::Subgroup(GroupSpec ambient, IntMatrix hnf_basis) : ambient_(std::move(ambient)), basis_(std::move(hnf_basis)) {}

bool Subgroup::contains(const GroupElem& g) const { return detail::in_row_lattice(basis_, g.coords); }

bool Subgroup::is_full() const {
  const std::size_t d = ambient_.dim();
  if (basis_.size() != d) return false;
  for (std::size_t i = 0; i < d; ++i) {
    if (basis_[i][i] != 1) return false;
  }
  return true;
}

bool Subgroup::is_trivial() const {
  for (const auto& row : basis_) {
    if (!ambient_.is_zero(ambient_.elem(row))) return false;
  }
  return true;
}

Subgroup subgroup_generated(const std::vector<GroupElem>& gens, const GroupSpec& group) {
  IntMatrix rows;
  for (const auto& g : gens) {
    if (!group.is_valid(g)) fail(ErrorKind::Validation, "generator " + to_string(g) + " is not an element of " + group.to_string());
    rows.push_back(g.coords);
  }
  for (std::size_t j = 0; j < group.torsion().size(); ++j) {
    IntVector r(group.dim(), 0);
    r[group.free_rank() + j] = group.torsion()[j];
    rows.push_back(std::move(r));
  }
  return Subgroup(group, detail::hermite_normal_form(std::move(rows), group.dim()));
}

Quotient quotient(const GroupSpec& group, const Subgroup& sub) {
  auto p = normalize(group.dim(), sub.basis());
  return Quotient{std::move(p.group), std::move(p.projection)};
}

std::string to_string(const GroupElem& g) {
  if (g.coords.empty()) return "0";
  if (g.coords.size() == 1) return g.coords[0].str();
  std::string s = "(";
  for (std::size_t i = 0; i < g.coords.size(); ++i) {
    if (i) s += ",";
    s += g.coords[i].str();
  }
  return s + ")";
}

}  // namespace oinfty
