#include "animat/brain.hpp"

#include <nlohmann/json.hpp>

#include <sstream>

namespace animat {

std::vector<DeterministicGate> decode_gates(const Genome& g) {
    std::vector<DeterministicGate> gates;
    const std::size_t n = g.size();
    if (n < 2) return gates;
    for (std::size_t i = 0; i < n; ++i) {
        if (g.sites[i] != 42 || g.at_wrapped(i + 1) != 213) continue;
        std::size_t pos = i + 2;
        auto next = [&] { return g.at_wrapped(pos++); };
        DeterministicGate gate;
        const int n_in = 1 + next() % 4;
        const int n_out = 1 + next() % 4;
        gate.inputs.reserve(n_in);
        gate.outputs.reserve(n_out);
        for (int k = 0; k < n_in; ++k) gate.inputs.push_back(next() % 8);
        for (int k = 0; k < n_out; ++k) gate.outputs.push_back(2 + next() % 6);
        const std::size_t rows = std::size_t{1} << n_in;
        const std::uint8_t row_mask = static_cast<std::uint8_t>((1u << n_out) - 1);
        gate.table.reserve(rows);
        for (std::size_t r = 0; r < rows; ++r) gate.table.push_back(next() & row_mask);
        gates.push_back(std::move(gate));
    }
    return gates;
}

BrainState brain_step(const BrainState& state, const std::vector<DeterministicGate>& gates) {
    BrainState next{};
    for (const auto& gate : gates) {
        std::size_t row = 0;
        for (std::size_t k = 0; k < gate.inputs.size(); ++k) {
            row |= static_cast<std::size_t>(state.bits[gate.inputs[k]]) << k;
        }
        const std::uint8_t out = gate.table[row];
        for (std::size_t k = 0; k < gate.outputs.size(); ++k) {
            next.bits[gate.outputs[k]] |= (out >> k) & 1u;
        }
    }
    return next;
}

ConnectivityMatrix effective_connectivity(const std::vector<DeterministicGate>& gates) {
    ConnectivityMatrix adj{};
    for (const auto& gate : gates) {
        for (auto i : gate.inputs) {
            for (auto j : gate.outputs) adj[i][j] = true;
        }
    }
    return adj;
}

std::string gates_to_jsonl(const std::vector<DeterministicGate>& gates) {
    std::ostringstream out;
    for (const auto& gate : gates) {
        nlohmann::json j;
        j["inputs"] = gate.inputs;
        j["outputs"] = gate.outputs;
        j["table"] = gate.table;
        out << j.dump() << '\n';
    }
    return out.str();
}

} // namespace animat
