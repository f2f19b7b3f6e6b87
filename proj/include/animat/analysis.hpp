#pragma once

#include "animat/evaluation.hpp"
#include "animat/stats.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace animat {

struct SweepEntry {
    std::uint32_t swarm_size = 0;
    double fraction = 0.0; // swarm_size / 72
    double mean_fitness = 0.0;
};

struct SweepResult {
    std::vector<SweepEntry> entries; // 21 sizes, largest first
    double auc = 0.0;                // trapezoid over the fraction axis
};

// 4-bit code (wall sensed, animat sensed, turn, move forward); 9 codes are
// reachable since wall+animat and turn+forward are both impossible.
struct ExternalStateCode {
    std::uint8_t bits = 0; // wall=8, animat=4, turn=2, forward=1

    bool operator==(const ExternalStateCode&) const = default;
};

inline constexpr int kNumExternalStates = 9;

struct BrainGraphMetrics {
    int lscc_size = 0;
    double avg_shortest_path = 0.0; // over reachable ordered pairs only
    int unreachable_pairs = 0;
    double avg_betweenness = 0.0;
    double avg_degree = 0.0; // distinct in/out neighbors, self-loops excluded
};

// Test sizes round(0.05 * k * 72) for k = 20..1, plus a single animat;
// 30 trials per size. The single-animat entry maps to fraction 1/72.
std::vector<std::uint32_t> sweep_sizes();
SweepResult generalizability_sweep(const Genome& g, const Environment& env,
                                   const TrialConfig& cfg, std::uint64_t seed);

// Trapezoid over the fraction axis, ascending; order of the input entries
// does not matter.
double sweep_auc(const std::vector<SweepEntry>& entries);

// count[y][x] = animat-steps spent at (x, y), summed over logs. All logs
// must come from the same environment.
std::vector<std::vector<std::uint64_t>> occupancy_heatmap(const std::vector<TrialLog>& logs);

struct MotorStateFrequencies {
    double move = 0.0;
    double turn = 0.0;
    double stay = 0.0;
};
MotorStateFrequencies motor_state_frequencies(const std::vector<TrialLog>& logs);

ExternalStateCode encode_external_state(bool wall, bool animat, MotorTuple m);

// Index of a code within the canonical ordering of the 9 valid codes.
int external_state_index(ExternalStateCode code);
ExternalStateCode external_state_at(int index);

// Counts of (sensors at t, action at t+1) joint codes; one entry per
// consecutive row pair, so totals are N * (T - 1) per log.
std::array<std::uint64_t, kNumExternalStates>
state_transition_counts(const std::vector<TrialLog>& logs);

// Raw counts of code-at-(t,t+1) -> code-at-(t+1,t+2) transitions.
using TransitionCounts = std::array<std::array<std::uint64_t, kNumExternalStates>, kNumExternalStates>;
using TransitionMatrix = std::array<std::array<double, kNumExternalStates>, kNumExternalStates>;

TransitionCounts transition_counts(const std::vector<TrialLog>& logs);

// Per-tile min-max scaling across conditions; a tile with equal counts in
// every condition maps nonzero counts to 1 and zeros to 0.
std::vector<TransitionMatrix> scale_transition_matrices(const std::vector<TransitionCounts>& conditions);

BrainGraphMetrics brain_graph_metrics(const ConnectivityMatrix& cm);

} // namespace animat
