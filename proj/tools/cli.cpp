#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <optional>
#include <ostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "instance.hpp"
#include "oinfty/error.hpp"

namespace oinfty::cli {

using nlohmann::json;

namespace {

json int_json(const Int& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max()) {
    return static_cast<std::int64_t>(v);
  }
  return v.str();
}

json elem_json(const GroupElem& g) {
  json a = json::array();
  for (const auto& c : g.coords) a.push_back(int_json(c));
  return a;
}

json elems_json(const std::vector<GroupElem>& v) {
  json a = json::array();
  for (const auto& g : v) a.push_back(elem_json(g));
  return a;
}

struct Context {
  std::optional<std::int64_t> window;
};

// all elements with free coordinates in [-r, r], in lexicographic order
std::vector<GroupElem> window_elements(const GroupSpec& g, std::int64_t r) {
  const std::size_t fr = g.free_rank();
  IntVector cur(g.dim(), 0);
  for (std::size_t i = 0; i < fr; ++i) cur[i] = -r;
  std::vector<GroupElem> out;
  for (;;) {
    out.push_back(GroupElem{cur});
    std::size_t k = g.dim();
    for (;;) {
      if (k == 0) return out;
      --k;
      const Int hi = k < fr ? Int(r) : g.torsion()[k - fr] - 1;
      if (cur[k] < hi) {
        ++cur[k];
        break;
      }
      cur[k] = k < fr ? Int(-r) : Int(0);
    }
  }
}

json set_json(const GammaSet& s, const Context& ctx) {
  if (s.is_empty()) return json{{"kind", "empty"}};
  if (s.is_full()) return json{{"kind", "full"}};
  if (s.kind() == GammaSet::Kind::Explicit) return json{{"kind", "explicit"}, {"elements", elems_json(s.elements())}};
  json j{{"kind", "generated"},
         {"bases", elems_json(s.bases())},
         {"points", elems_json(s.points())},
         {"membership", "x is a point, or x - b lies in sg for a base b"}};
  if (ctx.window) {
    std::vector<GroupElem> shown;
    for (auto& e : window_elements(s.group(), *ctx.window)) {
      if (s.contains(e)) shown.push_back(std::move(e));
    }
    j["window"] = json{{"radius", *ctx.window}, {"elements", elems_json(shown)}};
  }
  return j;
}

json pair_json(const InvariantPair& p, const Context& ctx) {
  return json{{"x", set_json(p.x, ctx)}, {"xinf", set_json(p.xinf, ctx)}};
}

json condition_json(const ConditionReport& r) {
  if (r.satisfied()) return json{{"status", "satisfied"}};
  const auto& v = *r.violation;
  return json{{"status", "violated"},
              {"index", static_cast<std::uint64_t>(v.index)},
              {"K", int_json(v.order)},
              {"quotient", v.quotient.to_string()}};
}

json ktheory_json(const KTheory& k) {
  return json{{"K0_rank", k.k0_rank ? int_json(*k.k0_rank) : json("countable")}, {"K1", int_json(k.k1_rank)}};
}

void render_text(const json& j, std::ostream& out, int indent);

std::string scalar_text(const json& j) {
  if (j.is_string()) return j.get<std::string>();
  return j.dump();
}

bool is_flat(const json& j) {
  if (!j.is_array()) return !j.is_object();
  return std::all_of(j.begin(), j.end(), [](const json& e) { return e.is_primitive() || (e.is_array() && is_flat(e)); });
}

void render_text(const json& j, std::ostream& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (is_flat(v)) {
        out << pad << k << ": " << scalar_text(v) << "\n";
      } else {
        out << pad << k << ":\n";
        render_text(v, out, indent + 2);
      }
    }
  } else if (j.is_array()) {
    for (const auto& v : j) {
      if (is_flat(v)) {
        out << pad << "- " << scalar_text(v) << "\n";
      } else {
        out << pad << "-\n";
        render_text(v, out, indent + 2);
      }
    }
  } else {
    out << pad << scalar_text(j) << "\n";
  }
}

std::vector<GroupElem> parse_element_list(const Instance& inst, const std::string& text, const std::string& where) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error&) {
    fail(ErrorKind::Validation, where + ": not a JSON array: " + text);
  }
  if (!j.is_array()) fail(ErrorKind::Validation, where + ": not a JSON array: " + text);
  std::vector<GroupElem> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(parse_element(inst, j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

GroupElem parse_single_element(const Instance& inst, const std::string& text, const std::string& where) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error&) {
    fail(ErrorKind::Validation, where + ": not a coordinate vector: " + text);
  }
  return parse_element(inst, j, where);
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::SizeLimit:
    case ErrorKind::BudgetExceeded: return 3;
    case ErrorKind::InternalInvariantBroken: return 4;
    default: return 2;
  }
}

std::optional<std::uint64_t> env_budget() {
  const char* v = std::getenv("OINFTY_BUDGET");
  if (!v || !*v) return std::nullopt;
  const std::string s(v);
  if (!std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }) || s.size() > 19) {
    fail(ErrorKind::Validation, "OINFTY_BUDGET must be a nonnegative integer, got \"" + s + "\"");
  }
  return std::stoull(s);
}

json cmd_analyze(const Instance& inst, const Context& ctx) {
  const auto f = flags(inst.sg);
  const auto scs = connes_spectrum(inst.sg);
  json j{{"simple", f.simple},
         {"purely_infinite", f.purely_infinite},
         {"primitive", f.primitive},
         {"af_embeddable_sufficient", f.af_embeddable_sufficient},
         {"condition", f.condition.satisfied() ? "satisfied" : "violated"},
         {"spectrum", scs.is_full() ? json("full") : set_json(scs, ctx)}};
  if (!f.condition.satisfied()) j["violation"] = condition_json(f.condition);
  const auto k = ktheory_json(k_theory(inst.sg.group()));
  j["K0_rank"] = k["K0_rank"];
  j["K1"] = k["K1"];
  return j;
}

json cmd_ideals(const Instance& inst, const Context& ctx) {
  const auto lat = enumerate_ideals(inst.sg, inst.enumeration);
  json nodes = json::array();
  for (std::size_t i = 0; i < lat.size(); ++i) {
    auto n = pair_json(lat.nodes[i], ctx);
    n["primitive"] = static_cast<bool>(lat.primitive[i]);
    nodes.push_back(std::move(n));
  }
  json j{{"count", lat.size()}, {"complete", lat.complete}, {"condition", condition_json(lat.condition)},
         {"nodes", std::move(nodes)}};
  if (!lat.note.empty()) j["note"] = lat.note;
  return j;
}

json cmd_prim(const Instance& inst, const Context& ctx) {
  const auto r = prim_space(inst.sg, inst.enumeration);
  json j{{"condition", condition_json(r.condition)}};
  if (r.condition.satisfied()) {
    j["regime"] = "condition_satisfied";
    j["enumerated"] = r.enumerated;
    if (r.enumerated) {
      json pp = json::array();
      for (const auto& p : r.prime_pairs) pp.push_back(pair_json(p, ctx));
      j["primitive_ideals"] = std::move(pp);
    } else {
      j["families"] = r.families;
    }
    return j;
  }
  j["regime"] = "condition_violated";
  j["circle_component"] = r.circle_component.to_string() + " x T";
  j["point_component"] = r.point_component.to_string();
  json d = json::array();
  for (const auto& x : r.delta) d.push_back(set_json(x, ctx));
  j["delta"] = std::move(d);
  j["delta_complete"] = r.delta_complete;
  return j;
}

json cmd_closed(const Instance& inst, const std::string& path) {
  const auto doc = read_json_file(path);
  const auto report = check_condition(inst.sg);
  report.violated();
  auto full = doc.contains("full_cosets") ? parse_set(inst, doc.at("full_cosets"), "full_cosets") : GammaSet::empty(inst.sg);
  auto xinf = doc.contains("xinf") ? parse_set(inst, doc.at("xinf"), "xinf") : GammaSet::empty(inst.sg);
  std::vector<std::pair<GroupElem, Rational>> pts;
  if (doc.contains("points")) {
    const auto& arr = doc.at("points");
    if (!arr.is_array()) fail(ErrorKind::Validation, "points: expected an array");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string where = "points[" + std::to_string(i) + "]";
      if (!arr[i].is_object() || !arr[i].contains("gamma")) fail(ErrorKind::Validation, where + ": missing field \"gamma\"");
      const auto gamma = parse_element(inst, arr[i].at("gamma"), where + ".gamma");
      Rational theta = 0;
      if (arr[i].contains("theta")) {
        const auto& t = arr[i].at("theta");
        theta = parse_rational(t.is_string() ? t.get<std::string>() : t.dump());
      }
      pts.emplace_back(gamma, theta);
    }
  }
  std::vector<GammaSet> lambda;
  if (doc.contains("lambda")) {
    const auto& arr = doc.at("lambda");
    if (!arr.is_array()) fail(ErrorKind::Validation, "lambda: expected an array");
    for (std::size_t i = 0; i < arr.size(); ++i) lambda.push_back(parse_set(inst, arr[i], "lambda[" + std::to_string(i) + "]"));
  }
  const auto y = make_ypair(report, std::move(full), pts, std::move(xinf));
  return json{{"closed", is_closed_in_prim(inst.sg, y, lambda, inst.enumeration)}};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Ideal structure of quasi-free crossed products of the Cuntz algebra O_inf", "oinfty"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string format = "text";
  std::optional<std::size_t> size_limit;
  std::optional<std::uint64_t> budget;
  std::optional<std::int64_t> window;
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--size-limit", size_limit, "Largest group order to enumerate");
  app.add_option("--budget", budget, "Node budget for one membership search");
  app.add_option("--window", window, "Radius of the displayed box on free coordinates")->check(CLI::NonNegativeNumber);

  std::string path, set_text, gamma_text, input_path;
  std::uint64_t fiber_n = 0;
  auto add = [&](const char* name, const char* help) {
    auto* s = app.add_subcommand(name, help);
    s->add_option("instance", path, "Instance file (JSON)")->required();
    return s;
  };
  auto* analyze = add("analyze", "Structure flags, condition, spectrum and K-theory");
  auto* ideals = add("ideals", "Enumerate the ideal lattice of a finite instance");
  auto* prim = add("prim", "Primitive ideal space");
  auto* condition = add("condition", "Check the condition on the weights");
  auto* spectrum = add("spectrum", "Strong Connes spectrum");
  auto* ktheory = add("ktheory", "K-groups");
  auto* prime = add("prime", "Primeness of the invariant set generated by --set");
  prime->add_option("--set", set_text, "JSON array of elements")->required();
  auto* closed = add("closed", "Test whether a Y-pair datum defines a closed subset of Prim");
  closed->add_option("--input", input_path, "JSON file with full_cosets, points, xinf, lambda")->required();
  auto* fibers = add("fibers", "Fiber algebras of an invariant pair");
  fibers->add_option("--n", fiber_n, "Level n")->required()->check(CLI::PositiveNumber);
  fibers->add_option("--set", set_text, "JSON array of elements generating X (default: all of the group)");
  auto* local = add("local", "Local subquotients at a point when the condition fails");
  local->add_option("--gamma", gamma_text, "Coordinates of the point")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    Overrides ov;
    ov.budget = budget;
    ov.size_limit = size_limit;
    ov.env_budget = env_budget();
    const auto inst = load_instance_file(path, ov);
    const Context ctx{window};
    const auto& sg = inst.sg;

    json result;
    if (analyze->parsed()) {
      result = cmd_analyze(inst, ctx);
    } else if (ideals->parsed()) {
      result = cmd_ideals(inst, ctx);
    } else if (prim->parsed()) {
      result = cmd_prim(inst, ctx);
    } else if (condition->parsed()) {
      result = condition_json(check_condition(sg));
    } else if (spectrum->parsed()) {
      result = json{{"spectrum", set_json(connes_spectrum(sg), ctx)}};
    } else if (ktheory->parsed()) {
      result = ktheory_json(k_theory(sg.group()));
      result["note"] = "K_*(C_0(Gamma)) through the KK-equivalence with C_0(Gamma)";
    } else if (prime->parsed()) {
      const auto x = GammaSet::generated(sg, parse_element_list(inst, set_text, "--set"), {});
      const auto base = principal_base(x);
      result = json{{"set", set_json(x, ctx)}, {"prime", is_prime_set(x)}, {"principal", base.has_value()}};
      if (base) result["principal_base"] = elem_json(*base);
    } else if (closed->parsed()) {
      result = cmd_closed(inst, input_path);
    } else if (fibers->parsed()) {
      const auto x = set_text.empty() ? GammaSet::full(sg)
                                      : GammaSet::generated(sg, parse_element_list(inst, set_text, "--set"), {});
      const InvariantPair p{x, h_set(x)};
      json fs = json::array();
      for (const auto& f : fiber_report(p, fiber_n)) {
        fs.push_back(json{{"k", static_cast<std::uint64_t>(f.k)},
                          {"matrix_size", int_json(f.matrix_size)},
                          {"spectrum", set_json(f.spectrum, ctx)}});
      }
      result = json{{"n", fiber_n}, {"pair", pair_json(p, ctx)}, {"fibers", std::move(fs)}};
    } else if (local->parsed()) {
      const auto report = check_condition(sg);
      const auto r = local_subquotients(sg, report, parse_single_element(inst, gamma_text, "--gamma"));
      result = json{{"gamma", elem_json(r.gamma)},
                    {"upper", json{{"algebra", "K (x) C(T)"}, {"circles", r.circles}}},
                    {"lower", json{{"algebra", "K (x) C(points)"}, {"points", elems_json(r.points)}}}};
    }

    if (format == "json") {
      out << result.dump(2) << "\n";
    } else {
      render_text(result, out, 0);
    }
    return 0;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  }
}

}  // namespace oinfty::cli
