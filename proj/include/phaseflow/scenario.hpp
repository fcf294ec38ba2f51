#pragma once

#include "json.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace phaseflow {

using Json = nlohmann::ordered_json;

inline constexpr const char* artifact_version = "1.0.0";

struct ScenarioInfo {
    std::string name;
    std::string topic;
    std::vector<std::string> parameters;  // with defaults, e.g. "y0=1000"
    std::vector<std::string> gates;
};

const std::vector<ScenarioInfo>& scenario_catalog();
std::string catalog_table();
Json catalog_json();

// Validates the config, runs the scenario, writes <scenario>.csv (plus any
// extra files) and manifest.json into out_dir, and returns the manifest.
// Config problems raise Error{config}; numerical ones the module's error.
Json run_scenario(const Json& config, const std::filesystem::path& out_dir);

// 0 success, 2 config error, 3 numerical or regime error
int exit_code_for(const std::exception& e);

} // namespace phaseflow
