#pragma once

#include "animat/evolution.hpp"

#include <cstdint>
#include <map>
#include <string>

namespace animat {

// Experiment configuration: line-based key=value with '#' comments.
struct ExperimentConfig {
    std::string map = "default"; // "default" or a map file path
    std::string condition;       // G_single, G_0.25, G_0.50, G_0.75, G_1.00 (optional)
    std::uint32_t replicates = 30;
    std::string output_dir;
    GAConfig ga;

    Environment make_environment() const;
};

ExperimentConfig default_experiment_config();

// Unknown keys are rejected by name.
void apply_key_value(ExperimentConfig& cfg, const std::string& key, const std::string& value);
ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig load_config_file(const std::string& path);

// Canonical snapshot; a run is reproducible from this text alone.
std::string serialize_config(const ExperimentConfig& cfg);

std::uint32_t condition_swarm_size(const std::string& label);

} // namespace animat
