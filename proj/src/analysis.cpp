#include "animat/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace animat {

std::vector<std::uint32_t> sweep_sizes() {
    std::vector<std::uint32_t> sizes;
    for (int k = 20; k >= 1; --k) {
        const long n = std::lround(0.05 * k * 72.0);
        sizes.push_back(static_cast<std::uint32_t>(std::max(1L, n)));
    }
    sizes.push_back(1); // the single-animat condition
    return sizes;
}

SweepResult generalizability_sweep(const Genome& g, const Environment& env,
                                   const TrialConfig& cfg, std::uint64_t seed) {
    const auto gates = decode_gates(g);
    SweepResult result;
    const auto sizes = sweep_sizes();
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        TrialConfig sized = cfg;
        sized.swarm_size = sizes[i];
        const FitnessReport report = gates_fitness(gates, env, sized, derive_seed(seed, i));
        result.entries.push_back({sizes[i], sizes[i] / 72.0, report.mean});
    }
    result.auc = sweep_auc(result.entries);
    return result;
}

double sweep_auc(const std::vector<SweepEntry>& entries) {
    // The duplicate smallest entry (the explicit single condition)
    // contributes a zero-width segment.
    std::vector<SweepEntry> sorted = entries;
    std::sort(sorted.begin(), sorted.end(),
              [](const SweepEntry& a, const SweepEntry& b) { return a.fraction < b.fraction; });
    double auc = 0.0;
    for (std::size_t i = 1; i < sorted.size(); ++i) {
        auc += (sorted[i].fraction - sorted[i - 1].fraction) *
               (sorted[i].mean_fitness + sorted[i - 1].mean_fitness) / 2.0;
    }
    return auc;
}

std::vector<std::vector<std::uint64_t>> occupancy_heatmap(const std::vector<TrialLog>& logs) {
    if (logs.empty()) throw std::invalid_argument("occupancy_heatmap: no logs");
    for (const auto& log : logs) {
        if (log.env_signature != logs[0].env_signature) {
            throw std::runtime_error("occupancy_heatmap: logs from different environments");
        }
    }
    std::vector<std::vector<std::uint64_t>> grid(
        logs[0].env_height, std::vector<std::uint64_t>(logs[0].env_width, 0));
    for (const auto& log : logs) {
        for (const auto& r : log.rows) ++grid[r.y][r.x];
    }
    return grid;
}

MotorStateFrequencies motor_state_frequencies(const std::vector<TrialLog>& logs) {
    if (logs.empty()) throw std::invalid_argument("motor_state_frequencies: no logs");
    std::uint64_t move = 0, turn = 0, stay = 0, total = 0;
    for (const auto& log : logs) {
        for (const auto& r : log.rows) {
            ++total;
            if (r.motor_left && r.motor_right) ++move;
            else if (r.motor_left || r.motor_right) ++turn;
            else ++stay;
        }
    }
    MotorStateFrequencies out;
    out.move = static_cast<double>(move) / static_cast<double>(total);
    out.turn = static_cast<double>(turn) / static_cast<double>(total);
    out.stay = static_cast<double>(stay) / static_cast<double>(total);
    return out;
}

ExternalStateCode encode_external_state(bool wall, bool animat, MotorTuple m) {
    if (wall && animat) {
        throw std::invalid_argument("invalid sensor combination: wall and animat both sensed");
    }
    const bool forward = m.left && m.right;
    const bool turn = (m.left != 0) != (m.right != 0);
    ExternalStateCode code;
    code.bits = static_cast<std::uint8_t>((wall ? 8 : 0) | (animat ? 4 : 0) | (turn ? 2 : 0) |
                                          (forward ? 1 : 0));
    return code;
}

namespace {
// The 9 valid codes in ascending bit order.
constexpr std::uint8_t kValidCodes[kNumExternalStates] = {0b0000, 0b0001, 0b0010,
                                                          0b0100, 0b0101, 0b0110,
                                                          0b1000, 0b1001, 0b1010};
} // namespace

int external_state_index(ExternalStateCode code) {
    for (int i = 0; i < kNumExternalStates; ++i) {
        if (kValidCodes[i] == code.bits) return i;
    }
    throw std::invalid_argument("not a valid external state code");
}

ExternalStateCode external_state_at(int index) {
    if (index < 0 || index >= kNumExternalStates) {
        throw std::invalid_argument("external state index out of range");
    }
    return ExternalStateCode{kValidCodes[index]};
}

namespace {

int row_pair_code(const TrialLog& log, std::uint32_t t, std::uint32_t a) {
    const StepRecord& sensed = log.row(t, a);
    const StepRecord& acted = log.row(t + 1, a);
    return external_state_index(encode_external_state(
        sensed.wall_bit != 0, sensed.animat_bit != 0, {acted.motor_left, acted.motor_right}));
}

} // namespace

std::array<std::uint64_t, kNumExternalStates>
state_transition_counts(const std::vector<TrialLog>& logs) {
    std::array<std::uint64_t, kNumExternalStates> counts{};
    for (const auto& log : logs) {
        for (std::uint32_t a = 0; a < log.swarm_size; ++a) {
            for (std::uint32_t t = 0; t + 1 < log.steps; ++t) {
                ++counts[static_cast<std::size_t>(row_pair_code(log, t, a))];
            }
        }
    }
    return counts;
}

TransitionCounts transition_counts(const std::vector<TrialLog>& logs) {
    TransitionCounts counts{};
    for (const auto& log : logs) {
        for (std::uint32_t a = 0; a < log.swarm_size; ++a) {
            for (std::uint32_t t = 0; t + 2 < log.steps; ++t) {
                const int from = row_pair_code(log, t, a);
                const int to = row_pair_code(log, t + 1, a);
                ++counts[static_cast<std::size_t>(from)][static_cast<std::size_t>(to)];
            }
        }
    }
    return counts;
}

std::vector<TransitionMatrix>
scale_transition_matrices(const std::vector<TransitionCounts>& conditions) {
    std::vector<TransitionMatrix> scaled(conditions.size());
    for (int i = 0; i < kNumExternalStates; ++i) {
        for (int j = 0; j < kNumExternalStates; ++j) {
            std::uint64_t lo = UINT64_MAX, hi = 0;
            for (const auto& c : conditions) {
                lo = std::min(lo, c[i][j]);
                hi = std::max(hi, c[i][j]);
            }
            for (std::size_t k = 0; k < conditions.size(); ++k) {
                const std::uint64_t v = conditions[k][i][j];
                double s;
                if (hi == lo) {
                    s = v > 0 ? 1.0 : 0.0; // degenerate tile
                } else {
                    s = static_cast<double>(v - lo) / static_cast<double>(hi - lo);
                }
                scaled[k][i][j] = s;
            }
        }
    }
    return scaled;
}

namespace {

// All-pairs reachability by paths of length >= 1.
std::array<std::array<bool, kNumNodes>, kNumNodes> closure(const ConnectivityMatrix& cm) {
    auto reach = cm;
    for (int k = 0; k < kNumNodes; ++k) {
        for (int i = 0; i < kNumNodes; ++i) {
            if (!reach[i][k]) continue;
            for (int j = 0; j < kNumNodes; ++j) {
                if (reach[k][j]) reach[i][j] = true;
            }
        }
    }
    return reach;
}

} // namespace

BrainGraphMetrics brain_graph_metrics(const ConnectivityMatrix& cm) {
    BrainGraphMetrics metrics;
    const auto reach = closure(cm);

    // SCC sizes from mutual reachability; singletons count as size 1.
    std::array<bool, kNumNodes> assigned{};
    metrics.lscc_size = 1;
    for (int i = 0; i < kNumNodes; ++i) {
        if (assigned[i]) continue;
        int size = 1;
        assigned[i] = true;
        for (int j = i + 1; j < kNumNodes; ++j) {
            if (!assigned[j] && reach[i][j] && reach[j][i]) {
                assigned[j] = true;
                ++size;
            }
        }
        metrics.lscc_size = std::max(metrics.lscc_size, size);
    }

    // Directed shortest paths over reachable ordered pairs.
    double path_sum = 0.0;
    int reachable_pairs = 0;
    for (int s = 0; s < kNumNodes; ++s) {
        std::array<int, kNumNodes> dist;
        dist.fill(-1);
        std::array<int, kNumNodes> queue;
        int head = 0, tail = 0;
        dist[s] = 0;
        queue[tail++] = s;
        while (head < tail) {
            const int v = queue[head++];
            for (int w = 0; w < kNumNodes; ++w) {
                if (cm[v][w] && dist[w] < 0) {
                    dist[w] = dist[v] + 1;
                    queue[tail++] = w;
                }
            }
        }
        for (int t = 0; t < kNumNodes; ++t) {
            if (t == s) continue;
            if (dist[t] > 0) {
                path_sum += dist[t];
                ++reachable_pairs;
            } else {
                ++metrics.unreachable_pairs;
            }
        }
    }
    metrics.avg_shortest_path = reachable_pairs ? path_sum / reachable_pairs : 0.0;

    // Brandes betweenness, unweighted directed.
    std::array<double, kNumNodes> betweenness{};
    for (int s = 0; s < kNumNodes; ++s) {
        std::array<int, kNumNodes> dist;
        std::array<double, kNumNodes> sigma{};
        std::array<double, kNumNodes> delta{};
        std::vector<std::vector<int>> preds(kNumNodes);
        dist.fill(-1);
        sigma[s] = 1.0;
        dist[s] = 0;
        std::vector<int> order;
        std::array<int, kNumNodes> queue;
        int head = 0, tail = 0;
        queue[tail++] = s;
        while (head < tail) {
            const int v = queue[head++];
            order.push_back(v);
            for (int w = 0; w < kNumNodes; ++w) {
                if (!cm[v][w] || w == v) continue;
                if (dist[w] < 0) {
                    dist[w] = dist[v] + 1;
                    queue[tail++] = w;
                }
                if (dist[w] == dist[v] + 1) {
                    sigma[w] += sigma[v];
                    preds[w].push_back(v);
                }
            }
        }
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            const int w = *it;
            for (int v : preds[w]) {
                delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
            }
            if (w != s) betweenness[w] += delta[w];
        }
    }
    double betweenness_sum = 0.0;
    for (double b : betweenness) betweenness_sum += b;
    metrics.avg_betweenness = betweenness_sum / kNumNodes;

    // Degree on the underlying undirected graph, self-loops excluded.
    double degree_sum = 0.0;
    for (int i = 0; i < kNumNodes; ++i) {
        int degree = 0;
        for (int j = 0; j < kNumNodes; ++j) {
            if (j != i && (cm[i][j] || cm[j][i])) ++degree;
        }
        degree_sum += degree;
    }
    metrics.avg_degree = degree_sum / kNumNodes;
    return metrics;
}

} // namespace animat
