#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "fdisac/scenario.hpp"

namespace fdisac {

inline constexpr int kConfigSchemaVersion = 1;

/// Raised for malformed, unknown or conflicting configuration keys.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Builds a scenario from a config document. Missing keys take the value of
/// the profile named by the top-level "profile" key ("paper" or "fast",
/// default "paper"). Unknown keys and conflicting unit variants of the same
/// field throw ConfigError.
Scenario scenario_from_json(const nlohmann::json& doc);

/// Full, explicit document in linear SI units. scenario_from_json inverts it
/// exactly.
nlohmann::json scenario_to_json(const Scenario& s);

/// Applies "a.b.c=value" style overrides to a document. Array elements are
/// addressed by index. Setting a key removes its unit variants, so
/// "targets.0.min_sinr_db=20" replaces an existing "min_sinr_linear".
void apply_override(nlohmann::json& doc, const std::string& assignment);

/// Reads the file, layers the overrides on top and parses the result.
Scenario load_scenario(const std::string& path, const std::vector<std::string>& overrides = {});

/// Parses text in the same format as load_scenario.
Scenario parse_scenario(const std::string& text, const std::vector<std::string>& overrides = {});

std::string render_scenario(const Scenario& s);

}  // namespace fdisac
