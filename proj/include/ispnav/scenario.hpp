#pragma once

#include <stdexcept>
#include <string>

#include "ispnav/sim.hpp"

namespace ispnav {

struct ScenarioError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Strict JSON scenario schema: top-level sections `name`, `sim`, `camera`,
// `controller`, `estimator`, `agents`. Unknown keys and out-of-range values
// are rejected; syntax errors carry line numbers.
Scenario parse_scenario(const std::string& text);
Scenario load_scenario(const std::string& path);

// Canonical serialization; save followed by load reproduces the value
// exactly, and re-saving reproduces the bytes.
std::string scenario_to_json(const Scenario& scenario);
void save_scenario(const Scenario& scenario, const std::string& path);

} // namespace ispnav
