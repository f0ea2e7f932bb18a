#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "dtcmc/sim.hpp"

namespace dtcmc {

/// Builds a scenario from its JSON document. Required top-level fields are
/// machine, grid, controller and duration; everything else has defaults.
/// Unknown keys are rejected. Throws ValidationError naming the field.
Scenario scenario_from_json(const nlohmann::json& doc);

/// Parses scenario text. Empty text is treated as an empty object so the
/// error lists the missing fields.
Scenario parse_scenario(const std::string& text);

Scenario load_scenario(const std::filesystem::path& path);

nlohmann::json scenario_to_json(const Scenario& scn);

std::string mode_name(ControlMode mode);

}  // namespace dtcmc
