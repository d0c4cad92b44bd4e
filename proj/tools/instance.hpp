#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "oinfty/classify.hpp"

namespace oinfty::cli {

struct Overrides {
  std::optional<std::uint64_t> budget;      // --budget
  std::optional<std::uint64_t> env_budget;  // OINFTY_BUDGET
  std::optional<std::size_t> size_limit;    // --size-limit
};

struct Instance {
  Semigroup sg;
  EnumOptions enumeration;
  /// Maps raw input coordinates onto sg.group().
  Projection input;
  std::size_t raw_rank = 0;
};

/// Throws Validation naming the offending field.
Instance load_instance(const nlohmann::json& doc, const Overrides& overrides);
Instance load_instance_file(const std::string& path, const Overrides& overrides);

nlohmann::json read_json_file(const std::string& path);

/// One element from a JSON coordinate array (a bare integer is accepted for
/// one-coordinate inputs), mapped through the input projection.
GroupElem parse_element(const Instance& inst, const nlohmann::json& j, const std::string& where);

/// {"kind": "empty" | "full" | "explicit" | "generated", ...}
GammaSet parse_set(const Instance& inst, const nlohmann::json& j, const std::string& where);

}  // namespace oinfty::cli
