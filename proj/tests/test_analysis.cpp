#include "animat/analysis.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

using namespace animat;

TEST_CASE("the sweep covers 21 sizes from the full swarm down to one") {
    const auto sizes = sweep_sizes();
    const std::vector<std::uint32_t> expected = {72, 68, 65, 61, 58, 54, 50, 47, 43, 40, 36,
                                                 32, 29, 25, 22, 18, 14, 11, 7,  4,  1};
    CHECK(sizes == expected);
}

TEST_CASE("the AUC of a flat sweep is the plateau times the span") {
    std::vector<SweepEntry> entries;
    for (auto n : sweep_sizes()) entries.push_back({n, n / 72.0, 2.0});
    CHECK(sweep_auc(entries) == doctest::Approx(2.0 * (1.0 - 1.0 / 72.0)));
}

TEST_CASE("the AUC does not depend on entry order") {
    std::vector<SweepEntry> entries = {{72, 1.0, 3.0}, {36, 0.5, 1.0}, {18, 0.25, 0.5}};
    std::vector<SweepEntry> shuffled = {entries[1], entries[2], entries[0]};
    CHECK(sweep_auc(entries) == doctest::Approx(sweep_auc(shuffled)));
    // Two trapezoids: 0.25 * 0.75 + 0.5 * 2.0.
    CHECK(sweep_auc(entries) == doctest::Approx(0.25 * 0.75 + 0.5 * 2.0));
}

namespace {

Genome codon_rich_genome(std::uint64_t seed) {
    MutationParams params;
    Rng rng(seed);
    Genome g = new_random_genome(3000, params, rng);
    for (std::size_t i = 0; i + 1 < g.size(); i += 16) {
        g.sites[i] = 42;
        g.sites[i + 1] = 213;
    }
    return g;
}

TrialLog blank_log(std::uint32_t steps, std::uint32_t swarm_size) {
    TrialLog log;
    log.swarm_size = swarm_size;
    log.steps = steps;
    log.env_width = 32;
    log.env_height = 32;
    log.env_signature = 1234;
    log.rows.resize(static_cast<std::size_t>(steps) * swarm_size);
    for (std::uint32_t t = 0; t < steps; ++t) {
        for (std::uint32_t a = 0; a < swarm_size; ++a) {
            StepRecord& r = log.rows[static_cast<std::size_t>(t) * swarm_size + a];
            r.step = static_cast<std::uint16_t>(t);
            r.animat = static_cast<std::uint16_t>(a);
            r.x = 1;
            r.y = 1;
        }
    }
    return log;
}

StepRecord& row_at(TrialLog& log, std::uint32_t t, std::uint32_t a) {
    return log.rows[static_cast<std::size_t>(t) * log.swarm_size + a];
}

} // namespace

TEST_CASE("the generalizability sweep reports every size deterministically") {
    const Environment env = default_environment();
    const Genome g = codon_rich_genome(61);
    TrialConfig cfg;
    cfg.steps = 30;
    cfg.trials = 2;
    const SweepResult a = generalizability_sweep(g, env, cfg, 5);
    const SweepResult b = generalizability_sweep(g, env, cfg, 5);
    const auto sizes = sweep_sizes();
    REQUIRE(a.entries.size() == sizes.size());
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        CHECK(a.entries[i].swarm_size == sizes[i]);
        CHECK(a.entries[i].fraction == doctest::Approx(sizes[i] / 72.0));
        CHECK(a.entries[i].mean_fitness == b.entries[i].mean_fitness);
    }
    CHECK(a.auc == doctest::Approx(sweep_auc(a.entries)));
}

TEST_CASE("the occupancy heatmap counts animat-steps per cell") {
    TrialLog log = blank_log(4, 2);
    row_at(log, 0, 0).x = 5;
    row_at(log, 0, 0).y = 6;
    row_at(log, 1, 0).x = 5;
    row_at(log, 1, 0).y = 6;
    const auto grid = occupancy_heatmap({log});
    REQUIRE(grid.size() == 32);
    REQUIRE(grid[0].size() == 32);
    CHECK(grid[6][5] == 2);
    CHECK(grid[1][1] == 6);
    std::uint64_t total = 0;
    for (const auto& row : grid) {
        for (auto v : row) total += v;
    }
    CHECK(total == 8);
}

TEST_CASE("heatmaps refuse logs from different environments") {
    TrialLog a = blank_log(2, 1);
    TrialLog b = blank_log(2, 1);
    b.env_signature = 999;
    CHECK_THROWS_WITH(occupancy_heatmap({a, b}), doctest::Contains("different environments"));
    CHECK_THROWS(occupancy_heatmap({}));
}

TEST_CASE("motor state frequencies partition all steps") {
    TrialLog log = blank_log(10, 1);
    for (std::uint32_t t = 0; t < 4; ++t) {
        row_at(log, t, 0).motor_left = 1;
        row_at(log, t, 0).motor_right = 1;
    }
    for (std::uint32_t t = 4; t < 7; ++t) row_at(log, t, 0).motor_left = 1;
    // Steps 7..9 stay.
    const MotorStateFrequencies f = motor_state_frequencies({log});
    CHECK(f.move == doctest::Approx(0.4));
    CHECK(f.turn == doctest::Approx(0.3));
    CHECK(f.stay == doctest::Approx(0.3));
    CHECK(f.move + f.turn + f.stay == doctest::Approx(1.0));
}

TEST_CASE("external state codes pack sensor and action bits") {
    CHECK(encode_external_state(false, false, {0, 0}).bits == 0b0000);
    CHECK(encode_external_state(false, false, {1, 1}).bits == 0b0001);
    CHECK(encode_external_state(false, false, {1, 0}).bits == 0b0010);
    CHECK(encode_external_state(false, false, {0, 1}).bits == 0b0010);
    CHECK(encode_external_state(false, true, {0, 0}).bits == 0b0100);
    CHECK(encode_external_state(true, false, {1, 1}).bits == 0b1001);
    CHECK_THROWS(encode_external_state(true, true, {0, 0}));
}

TEST_CASE("the nine valid codes index a stable ordering") {
    for (int i = 0; i < kNumExternalStates; ++i) {
        CHECK(external_state_index(external_state_at(i)) == i);
    }
    // Turn and forward bits cannot both be set; wall bit 8 + animat bit 4
    // cannot combine either.
    CHECK_THROWS(external_state_index(ExternalStateCode{0b0011}));
    CHECK_THROWS(external_state_index(ExternalStateCode{0b1100}));
    CHECK_THROWS(external_state_index(ExternalStateCode{0b1111}));
    CHECK_THROWS(external_state_at(-1));
    CHECK_THROWS(external_state_at(9));
}

TEST_CASE("state counts pair sensors at t with the action at t+1") {
    TrialLog log = blank_log(3, 2);
    // Animat 0: wall sensed at t=0, forward at t=1.
    row_at(log, 0, 0).wall_bit = 1;
    row_at(log, 1, 0).motor_left = 1;
    row_at(log, 1, 0).motor_right = 1;
    const auto counts = state_transition_counts({log});
    std::uint64_t total = 0;
    for (auto c : counts) total += c;
    CHECK(total == 2 * (3 - 1)); // N * (T - 1)
    CHECK(counts[external_state_index(encode_external_state(true, false, {1, 1}))] == 1);
    // Everything else was quiet.
    CHECK(counts[external_state_index(encode_external_state(false, false, {0, 0}))] == 3);
}

TEST_CASE("transition counts chain consecutive state codes") {
    TrialLog log = blank_log(4, 1);
    row_at(log, 0, 0).wall_bit = 1; // code (wall, stay) at pair (0,1)
    const auto counts = transition_counts({log});
    std::uint64_t total = 0;
    for (const auto& row : counts) {
        for (auto c : row) total += c;
    }
    CHECK(total == 4 - 2); // N * (T - 2)
    const int wall_stay = external_state_index(encode_external_state(true, false, {0, 0}));
    const int quiet = external_state_index(encode_external_state(false, false, {0, 0}));
    CHECK(counts[wall_stay][quiet] == 1);
    CHECK(counts[quiet][quiet] == 1);
}

TEST_CASE("transition matrices scale per tile across conditions") {
    TransitionCounts a{}, b{}, c{};
    a[0][0] = 10;
    b[0][0] = 30;
    c[0][0] = 20;
    a[1][1] = 5; // equal nonzero everywhere in this tile
    b[1][1] = 5;
    c[1][1] = 5;
    // Tile [2][2] stays zero in every condition.
    const auto scaled = scale_transition_matrices({a, b, c});
    REQUIRE(scaled.size() == 3);
    CHECK(scaled[0][0][0] == doctest::Approx(0.0));
    CHECK(scaled[1][0][0] == doctest::Approx(1.0));
    CHECK(scaled[2][0][0] == doctest::Approx(0.5));
    CHECK(scaled[0][1][1] == doctest::Approx(1.0));
    CHECK(scaled[1][1][1] == doctest::Approx(1.0));
    CHECK(scaled[0][2][2] == doctest::Approx(0.0));
}

namespace {

// Independent Tarjan SCC for the oracle comparison.
int tarjan_largest_scc(const ConnectivityMatrix& cm) {
    std::array<int, kNumNodes> index_of, lowlink;
    std::array<bool, kNumNodes> on_stack{};
    index_of.fill(-1);
    std::vector<int> stack;
    int counter = 0, largest = 1;
    std::function<void(int)> strongconnect = [&](int v) {
        index_of[v] = lowlink[v] = counter++;
        stack.push_back(v);
        on_stack[v] = true;
        for (int w = 0; w < kNumNodes; ++w) {
            if (!cm[v][w] || w == v) continue;
            if (index_of[w] < 0) {
                strongconnect(w);
                lowlink[v] = std::min(lowlink[v], lowlink[w]);
            } else if (on_stack[w]) {
                lowlink[v] = std::min(lowlink[v], index_of[w]);
            }
        }
        if (lowlink[v] == index_of[v]) {
            int size = 0;
            int w;
            do {
                w = stack.back();
                stack.pop_back();
                on_stack[w] = false;
                ++size;
            } while (w != v);
            largest = std::max(largest, size);
        }
    };
    for (int v = 0; v < kNumNodes; ++v) {
        if (index_of[v] < 0) strongconnect(v);
    }
    return largest;
}

} // namespace

TEST_CASE("an empty brain graph has no structure") {
    const BrainGraphMetrics m = brain_graph_metrics(ConnectivityMatrix{});
    CHECK(m.lscc_size == 1);
    CHECK(m.avg_shortest_path == doctest::Approx(0.0));
    CHECK(m.unreachable_pairs == 8 * 7);
    CHECK(m.avg_betweenness == doctest::Approx(0.0));
    CHECK(m.avg_degree == doctest::Approx(0.0));
}

TEST_CASE("a directed chain yields the textbook metrics") {
    ConnectivityMatrix cm{};
    cm[2][3] = cm[3][4] = true;
    const BrainGraphMetrics m = brain_graph_metrics(cm);
    CHECK(m.lscc_size == 1);
    // Reachable pairs: (2,3)=1, (2,4)=2, (3,4)=1.
    CHECK(m.avg_shortest_path == doctest::Approx(4.0 / 3.0));
    CHECK(m.unreachable_pairs == 56 - 3);
    // Node 3 sits on the single (2,4) geodesic.
    CHECK(m.avg_betweenness == doctest::Approx(1.0 / 8.0));
    CHECK(m.avg_degree == doctest::Approx(4.0 / 8.0));
}

TEST_CASE("a 3-cycle forms one strongly connected component") {
    ConnectivityMatrix cm{};
    cm[2][3] = cm[3][4] = cm[4][2] = true;
    const BrainGraphMetrics m = brain_graph_metrics(cm);
    CHECK(m.lscc_size == 3);
    // All 6 ordered pairs among {2,3,4} are reachable: three at 1, three at 2.
    CHECK(m.avg_shortest_path == doctest::Approx(1.5));
    CHECK(m.unreachable_pairs == 56 - 6);
    CHECK(m.avg_degree == doctest::Approx(6.0 / 8.0));
}

TEST_CASE("self-loops do not inflate degree or the LSCC") {
    ConnectivityMatrix cm{};
    cm[5][5] = true;
    const BrainGraphMetrics m = brain_graph_metrics(cm);
    CHECK(m.lscc_size == 1);
    CHECK(m.avg_degree == doctest::Approx(0.0));
}

TEST_CASE("LSCC size matches an independent Tarjan implementation") {
    Rng rng(71);
    for (int rep = 0; rep < 200; ++rep) {
        ConnectivityMatrix cm{};
        for (int i = 0; i < kNumNodes; ++i) {
            for (int j = 0; j < kNumNodes; ++j) {
                cm[i][j] = rng.uniform_real() < 0.18;
            }
        }
        CHECK(brain_graph_metrics(cm).lscc_size == tarjan_largest_scc(cm));
    }
}

TEST_CASE("path metrics match a Floyd-Warshall oracle") {
    Rng rng(73);
    for (int rep = 0; rep < 100; ++rep) {
        ConnectivityMatrix cm{};
        for (int i = 0; i < kNumNodes; ++i) {
            for (int j = 0; j < kNumNodes; ++j) {
                cm[i][j] = rng.uniform_real() < 0.2;
            }
        }
        // All-pairs distances, self-pairs excluded, self-loops ignored.
        constexpr int inf = 1000;
        std::array<std::array<int, kNumNodes>, kNumNodes> dist;
        for (int i = 0; i < kNumNodes; ++i) {
            for (int j = 0; j < kNumNodes; ++j) {
                dist[i][j] = (i != j && cm[i][j]) ? 1 : inf;
            }
        }
        for (int k = 0; k < kNumNodes; ++k) {
            for (int i = 0; i < kNumNodes; ++i) {
                for (int j = 0; j < kNumNodes; ++j) {
                    dist[i][j] = std::min(dist[i][j], dist[i][k] + dist[k][j]);
                }
            }
        }
        double sum = 0.0;
        int reachable = 0, unreachable = 0;
        for (int i = 0; i < kNumNodes; ++i) {
            for (int j = 0; j < kNumNodes; ++j) {
                if (i == j) continue;
                if (dist[i][j] < inf) {
                    sum += dist[i][j];
                    ++reachable;
                } else {
                    ++unreachable;
                }
            }
        }
        const BrainGraphMetrics m = brain_graph_metrics(cm);
        CHECK(m.unreachable_pairs == unreachable);
        CHECK(m.avg_shortest_path == doctest::Approx(reachable ? sum / reachable : 0.0));
    }
}
