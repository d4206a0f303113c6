#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "mmwsim/engine.hpp"

namespace mmwsim {

// Scenario plus the optional sweep grid, as read from a YAML config.
//
//   policy: bapf
//   drops: 200
//   blockage: {arrival_rate_per_s: 2.0, mean_duration_ms: 3000}
//   prediction: {window_ms: 500}
//   sweep: {arrival_rates_per_s: [0.2, 0.5], policies: [pf, bapf]}
//
// Every key is optional and defaults to the table1 preset. Unknown keys are
// rejected with their line number.
struct RunConfig {
  ScenarioConfig scenario = ScenarioConfig::table1();
  ScenarioGrid grid;

  bool operator==(const RunConfig&) const = default;
};

// Throws ConfigError.
RunConfig parse_config(std::string_view yaml_text);
RunConfig load_run_config(const std::filesystem::path& path);

// The literal name "table1" selects the preset without touching the disk.
ScenarioConfig load_config(const std::filesystem::path& path);

// Emits every field, so parse_config(dump_config(c)) == c.
std::string dump_config(const RunConfig& config);

}  // namespace mmwsim
