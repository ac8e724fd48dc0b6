#pragma once

#include "corosim/engine/engine.hpp"
#include "corosim/io/workload.hpp"

#include <json.hpp>

#include <string>

namespace corosim {

// Builds a runnable scenario from a JSON config. Workloads come from an
// inline record list, a referenced trace file, or a generator spec; a seed
// override recomputes generated arrivals.
Scenario scenario_from_json(const nlohmann::json& config, const std::string& base_dir);
Scenario load_scenario_file(const std::string& path);

// Field-exact parse of config rationals: decimal strings and integers are
// exact; floats take their binary value.
Rational rational_field(const nlohmann::json& value);

}  // namespace corosim
