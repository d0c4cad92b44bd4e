#include "instance.hpp"

#include <fstream>
#include <limits>
#include <sstream>

#include "oinfty/error.hpp"

namespace oinfty::cli {

using nlohmann::json;

namespace {

Int parse_int(const json& j, const std::string& where) {
  if (j.is_number_integer()) return j.is_number_unsigned() ? Int(j.get<std::uint64_t>()) : Int(j.get<std::int64_t>());
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    const std::size_t start = (!s.empty() && s[0] == '-') ? 1 : 0;
    bool ok = start < s.size();
    for (std::size_t i = start; i < s.size() && ok; ++i) ok = s[i] >= '0' && s[i] <= '9';
    if (ok) return Int(s);
  }
  fail(ErrorKind::Validation, where + ": expected an integer, got " + j.dump());
}

IntVector parse_vector(const json& j, std::size_t len, const std::string& where) {
  IntVector v;
  if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) v.push_back(parse_int(j[i], where + "[" + std::to_string(i) + "]"));
  } else if (len == 1) {
    v.push_back(parse_int(j, where));
  } else {
    fail(ErrorKind::Validation, where + ": expected a coordinate array, got " + j.dump());
  }
  if (v.size() != len) {
    fail(ErrorKind::Validation, where + ": expected " + std::to_string(len) + " coordinates, got " + j.dump());
  }
  return v;
}

std::uint64_t parse_count(const json& j, const std::string& where) {
  const Int v = parse_int(j, where);
  if (v < 0 || v > std::numeric_limits<std::uint64_t>::max()) {
    fail(ErrorKind::Validation, where + ": expected a nonnegative integer, got " + j.dump());
  }
  return static_cast<std::uint64_t>(v);
}

const json& field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) fail(ErrorKind::Validation, where + ": missing field \"" + key + "\"");
  return obj.at(key);
}

}  // namespace

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Validation, "cannot open \"" + path + "\"");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return json::parse(ss.str());
  } catch (const json::parse_error& e) {
    fail(ErrorKind::Validation, "\"" + path + "\" is not valid JSON: " + e.what());
  }
}

Instance load_instance(const json& doc, const Overrides& overrides) {
  if (!doc.is_object()) fail(ErrorKind::Validation, "instance: expected a JSON object");
  const auto& group = field(doc, "group", "instance");

  // every input form becomes Z^rank / relations, then invariant-factor form
  std::size_t rank = 0;
  IntMatrix relations;
  if (group.contains("relations") || group.contains("rank")) {
    rank = parse_count(field(group, "rank", "group"), "group.rank");
    const auto& rel = group.contains("relations") ? group.at("relations") : json::array();
    if (!rel.is_array()) fail(ErrorKind::Validation, "group.relations: expected an array");
    for (std::size_t i = 0; i < rel.size(); ++i) {
      relations.push_back(parse_vector(rel[i], rank, "group.relations[" + std::to_string(i) + "]"));
    }
  } else {
    const std::size_t free_rank =
        group.contains("free_rank") ? parse_count(group.at("free_rank"), "group.free_rank") : 0;
    const auto& tors = group.contains("torsion") ? group.at("torsion") : json::array();
    if (!tors.is_array()) fail(ErrorKind::Validation, "group.torsion: expected an array");
    rank = free_rank + tors.size();
    for (std::size_t j = 0; j < tors.size(); ++j) {
      const Int n = parse_int(tors[j], "group.torsion[" + std::to_string(j) + "]");
      if (n < 1) fail(ErrorKind::Validation, "group.torsion[" + std::to_string(j) + "]: factor must be >= 1, got " + n.str());
      IntVector r(rank, 0);
      r[free_rank + j] = n;
      relations.push_back(std::move(r));
    }
  }
  auto pres = normalize(rank, relations);

  SearchOptions search;
  EnumOptions enumeration;
  if (doc.contains("options")) {
    const auto& opt = doc.at("options");
    if (!opt.is_object()) fail(ErrorKind::Validation, "options: expected an object");
    if (opt.contains("search_budget")) search.budget = parse_count(opt.at("search_budget"), "options.search_budget");
    if (opt.contains("size_limit")) enumeration.size_limit = parse_count(opt.at("size_limit"), "options.size_limit");
  }
  if (overrides.env_budget) search.budget = *overrides.env_budget;
  if (overrides.budget) search.budget = *overrides.budget;
  if (overrides.size_limit) enumeration.size_limit = *overrides.size_limit;

  const auto& weights = field(doc, "weights", "instance");
  auto read_list = [&](const char* key, bool required) {
    std::vector<GroupElem> out;
    if (!weights.contains(key)) {
      if (required) fail(ErrorKind::Validation, std::string("weights: missing field \"") + key + "\"");
      return out;
    }
    const auto& arr = weights.at(key);
    if (!arr.is_array()) fail(ErrorKind::Validation, std::string("weights.") + key + ": expected an array");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string where = std::string("weights.") + key + "[" + std::to_string(i) + "]";
      out.push_back(pres.projection.apply_raw(parse_vector(arr[i], rank, where)));
    }
    return out;
  };
  auto prefix = read_list("prefix", false);
  auto tail = read_list("tail", true);
  if (tail.empty()) fail(ErrorKind::Validation, "weights.tail: must be nonempty");

  WeightSystem w(pres.group, std::move(prefix), std::move(tail));
  return Instance{Semigroup(std::move(w), search), enumeration, std::move(pres.projection), rank};
}

Instance load_instance_file(const std::string& path, const Overrides& overrides) {
  return load_instance(read_json_file(path), overrides);
}

GroupElem parse_element(const Instance& inst, const json& j, const std::string& where) {
  return inst.input.apply_raw(parse_vector(j, inst.raw_rank, where));
}

GammaSet parse_set(const Instance& inst, const json& j, const std::string& where) {
  const auto& sg = inst.sg;
  const auto kind = field(j, "kind", where);
  if (!kind.is_string()) fail(ErrorKind::Validation, where + ".kind: expected a string");
  const auto k = kind.get<std::string>();
  auto list = [&](const char* key) {
    std::vector<GroupElem> out;
    if (!j.contains(key)) return out;
    const auto& arr = j.at(key);
    if (!arr.is_array()) fail(ErrorKind::Validation, where + "." + key + ": expected an array");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      out.push_back(parse_element(inst, arr[i], where + "." + key + "[" + std::to_string(i) + "]"));
    }
    return out;
  };
  if (k == "empty") return GammaSet::empty(sg);
  if (k == "full") return GammaSet::full(sg);
  if (k == "explicit") return GammaSet::finite(sg, list("elements"));
  if (k == "generated") return GammaSet::generated(sg, list("bases"), list("points"));
  fail(ErrorKind::Validation, where + ".kind: unknown set kind \"" + k + "\"");
}

}  // namespace oinfty::cli
