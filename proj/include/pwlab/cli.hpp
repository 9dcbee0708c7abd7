#pragma once

#include <string>
#include <vector>

#include "pwlab/experiments.hpp"

namespace pwlab::cli {

// Parses and validates a scenario config file: strict JSON (duplicate
// keys rejected), unknown keys rejected, defaults filled per kind.
// Throws ConfigError for schema problems, PhysicsError for structurally
// valid configs that violate a physics invariant.
xp::ScenarioConfig parse_config(const std::string& path);
xp::ScenarioConfig parse_config_text(const std::string& text);

// Canonical (sorted-key) JSON serialization of the effective config.
std::string config_to_json(const xp::ScenarioConfig& c);

// Exit codes: 0 ok, 1 runtime failure, 2 usage/schema, 3 invalid
// physics config, 4 check-suite failure.
int run(const std::vector<std::string>& args);
int run(int argc, char** argv);

}  // namespace pwlab::cli
