#pragma once

#include "animat/world.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace animat {

struct TrialConfig {
    std::uint32_t steps = 500;       // T
    std::uint32_t timeout = 100;     // refractory window after a rewarded-or-not crossing
    double reward = 1.0;
    double penalty = 0.075;
    std::uint32_t swarm_size = 1;
    std::uint32_t trials = 30;       // |R|
};

struct StepRecord {
    std::uint16_t step = 0;
    std::uint16_t animat = 0;
    std::uint8_t x = 0;
    std::uint8_t y = 0;
    Heading heading = Heading::up;
    std::uint8_t wall_bit = 0;
    std::uint8_t animat_bit = 0;
    std::uint8_t motor_left = 0;
    std::uint8_t motor_right = 0;
    std::uint8_t collided = 0;
    std::uint8_t crossed = 0;
};

struct TrialLog {
    std::uint64_t env_signature = 0;
    std::uint32_t env_width = 0;
    std::uint32_t env_height = 0;
    std::uint32_t swarm_size = 0;
    std::uint32_t steps = 0;
    std::vector<StepRecord> rows; // swarm_size * steps rows, step-major

    const StepRecord& row(std::uint32_t step, std::uint32_t animat) const {
        return rows[static_cast<std::size_t>(step) * swarm_size + animat];
    }
};

struct FitnessReport {
    std::vector<std::uint32_t> tracked_animat; // randA per trial
    std::vector<double> trial_fitness;         // f per trial
    double mean = 0.0;                         // F
};

// Full trial with logging; N clones on random start positions.
TrialLog run_trial(const std::vector<DeterministicGate>& gates, const Environment& env,
                   const TrialConfig& cfg, Rng& rng);

// Reward 1 per crossing with no crossing in the preceding `timeout` steps
// (window clipped at t=0; unrewarded crossings still reset it), minus
// `penalty` per step spent on a cell with another animat.
double animat_fitness(const TrialLog& log, std::uint32_t animat, const TrialConfig& cfg);

// |R| independent trials; each tracks one uniformly drawn animat. Per-trial
// RNG streams derive from `seed` so trial order cannot matter.
FitnessReport genome_fitness(const Genome& g, const Environment& env, const TrialConfig& cfg,
                             std::uint64_t seed);
FitnessReport gates_fitness(const std::vector<DeterministicGate>& gates, const Environment& env,
                            const TrialConfig& cfg, std::uint64_t seed);

std::string trial_log_to_csv(const TrialLog& log);
TrialLog trial_log_from_csv(const std::string& csv);

} // namespace animat
