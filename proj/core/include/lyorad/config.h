#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "lyorad/multi_vial.h"

namespace lyorad {

// A scenario plus the run settings that live next to it in a config file.
struct ScenarioConfig {
    std::string name;
    Scenario scenario;
    std::string output_dir;   // empty: caller decides
};

// JSON document with sections material, process, vial, chamber, layout, occluders,
// radiation, numerics and output. Quantities are numbers in SI units or strings with a
// unit suffix ("0.5 cm", "1 K/min"). Omitted sections and fields take the reference
// defaults; an omitted radiation section means no radiation. Unknown keys are rejected.
// Relative paths resolve against base_dir.
ScenarioConfig parse_config_text(std::string_view text, const std::string& base_dir = ".");
ScenarioConfig load_config(const std::string& path);
Scenario parse_scenario(const std::string& path);

// Canonical JSON with every field spelled out in SI; parses back to an equal Scenario.
std::string serialize_config(const ScenarioConfig& config);
std::string serialize_scenario(const Scenario& scenario);

// 64-bit FNV-1a of a text, printed as 16 hex digits.
std::string content_hash(std::string_view text);

}  // namespace lyorad
