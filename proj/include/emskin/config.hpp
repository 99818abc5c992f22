#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "emskin/scene.hpp"

namespace emskin {

/// Parses a scenario document (JSON, `//` and `/* */` comments allowed).
/// Throws InputError naming the offending field.
ScenarioConfig parse_scenario_config(std::string_view text);

/// Serializes a config back to the scenario document format.
std::string scenario_config_to_json(const ScenarioConfig& config);

/// Throws IoError when the file cannot be read.
std::string read_text_file(const std::filesystem::path& path);

/// Reads, parses, and validates a scenario file. Missing files are reported as
/// InputError naming the path (a user-supplied argument, not an environment fault).
Scenario load_scenario(const std::filesystem::path& path);

} // namespace emskin
