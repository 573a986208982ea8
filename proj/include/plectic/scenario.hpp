#pragma once
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "plectic/serialize.hpp"

namespace plectic {

// Named, reproducible experiment: fixed construction plus embedded
// assertions, reported as canonical JSON.  Every randomized draw goes
// through the seed recorded in the report, so reruns are byte-identical.
struct ScenarioInfo {
  std::string name;
  std::string summary;
  std::map<std::string, std::string> defaults;  // overridable parameters
};

// Deterministic order, names unique.
std::vector<ScenarioInfo> list_scenarios();

struct ScenarioResult {
  Json report;
  bool passed = false;  // true iff every embedded assertion passed
};

// Runs a built-in scenario.  Override keys must appear in the scenario's
// parameter table (InvalidOverride otherwise; UnknownScenario for the name);
// values are parsed per parameter, rationals as "a" or "a/b".
ScenarioResult run_scenario(const std::string& name,
                            const std::map<std::string, std::string>& overrides,
                            uint64_t seed);

// Canonical report bytes: schema/version header merged in when absent,
// sorted keys, canonical scalar text, trailing newline.
std::string emit_report(const Json& results);

}  // namespace plectic
