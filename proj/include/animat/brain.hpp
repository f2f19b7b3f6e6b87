#pragma once

#include "animat/genome.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace animat {

// Node layout: 0 = wall sensor, 1 = animat sensor, 2-5 = hidden, 6 = left
// motor, 7 = right motor.
inline constexpr int kNumNodes = 8;
inline constexpr int kWallSensor = 0;
inline constexpr int kAnimatSensor = 1;
inline constexpr int kLeftMotor = 6;
inline constexpr int kRightMotor = 7;

struct BrainState {
    std::array<std::uint8_t, kNumNodes> bits{};

    bool operator==(const BrainState&) const = default;
};

// Deterministic lookup-table gate. Sensors (nodes 0,1) are never outputs.
struct DeterministicGate {
    std::vector<std::uint8_t> inputs;  // 1-4 node ids in [0,7]
    std::vector<std::uint8_t> outputs; // 1-4 node ids in [2,7]
    std::vector<std::uint8_t> table;   // 2^|inputs| rows, low |outputs| bits each

    bool operator==(const DeterministicGate&) const = default;
};

using ConnectivityMatrix = std::array<std::array<bool, kNumNodes>, kNumNodes>;

// Genome layout, fixed by this project so genomes are portable:
// start codon bytes (42, 213), then n_in = 1 + (byte % 4), n_out =
// 1 + (byte % 4), n_in input ids (byte % 8), n_out output ids
// (2 + byte % 6), then 2^n_in table rows (low n_out bits of each byte).
// Reads wrap circularly; overlapping codons are allowed.
std::vector<DeterministicGate> decode_gates(const Genome& g);

// One synchronous update. Input bits index the table little-endian (first
// listed input is the least significant bit); outputs from all gates are
// OR-combined. Sensor bits of the result are zeroed.
BrainState brain_step(const BrainState& state, const std::vector<DeterministicGate>& gates);

// adj[i][j] = some gate reads i and writes j.
ConnectivityMatrix effective_connectivity(const std::vector<DeterministicGate>& gates);

// One gate per line: {"inputs":[...],"outputs":[...],"table":[...]}
std::string gates_to_jsonl(const std::vector<DeterministicGate>& gates);

} // namespace animat
