#pragma once

#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "opm/sim.hpp"

namespace opm {

/// Parses a structured JSON config into a SimConfig. Unknown keys are
/// rejected; every violation throws ConfigError naming the offending key.
SimConfig config_from_json(const nlohmann::json& j);

/// Fully explicit dump (every field, resolved per-agent vectors collapsed
/// to scalars only when uniform). config_from_json(config_to_json(c))
/// round-trips.
nlohmann::json config_to_json(const SimConfig& config);

struct PresetRun {
    std::string label;  // empty for single-config presets
    SimConfig config;
};

/// Experiment presets. Grid presets expand to one config per
/// (alpha, sigma) cell; the others expand to a single fully explicit
/// config. The seed parameterizes any sampled structure so the expansion
/// is reproducible.
std::vector<PresetRun> expand_preset(const std::string& name, std::uint64_t seed);

std::vector<std::string> preset_names();

}  // namespace opm
