#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "adsel/experiment.hpp"

namespace adsel {

// Flat JSON config with keys mirroring the Hyperparams / ExperimentConfig
// fields; unknown keys are rejected. "sigma" accepts a number or "auto".
ExperimentConfig config_from_json(const nlohmann::json& j);
ExperimentConfig load_config(const std::filesystem::path& path);

nlohmann::json config_to_json(const ExperimentConfig& cfg);
nlohmann::json hyperparams_to_json(const Hyperparams& hp);

}  // namespace adsel
