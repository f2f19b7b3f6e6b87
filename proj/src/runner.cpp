#include "animat/runner.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fs = std::filesystem;

namespace animat {

namespace {

constexpr std::uint64_t kReplicateStream = 0x52455043; // replicate seeds
constexpr std::uint64_t kAnalysisStream = 0x414e414c;  // post-hoc trial seeds
constexpr int kBootstrapResamples = 10000;
constexpr double kBootstrapConfidence = 0.95;

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream text;
    text << in.rdbuf();
    return text.str();
}

std::string version_comment(std::uint64_t seed) {
    return std::string("# animat ") + kToolVersion + " seed=" + std::to_string(seed) + "\n";
}

std::string rep_dir_name(std::uint32_t r) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "rep_%02u", r);
    return buf;
}

void run_replicate(const ExperimentConfig& cfg, const Environment& env,
                   const std::string& rep_dir, std::uint64_t replicate_seed) {
    fs::create_directories(rep_dir + "/checkpoints");
    GAConfig ga = cfg.ga;
    ga.seed = replicate_seed;

    std::ostringstream stats_csv;
    stats_csv << version_comment(replicate_seed);
    stats_csv << "generation,mean_f,max_f,sem\n";

    auto callback = [&](std::uint32_t generation, const std::vector<Genome>& population,
                        const std::vector<double>& fitness, const GenerationStats& stats) {
        stats_csv << generation << ',' << fmt_double(stats.mean_fitness) << ','
                  << fmt_double(stats.max_fitness) << ',' << fmt_double(stats.sem) << '\n';
        if (ga.checkpoint_every && generation % ga.checkpoint_every == 0) {
            char name[32];
            std::snprintf(name, sizeof(name), "gen_%06u.hex", generation);
            save_population_hex(population, rep_dir + "/checkpoints/" + name);
        }
        (void)fitness;
    };

    const EvolutionRecord record = evolve(env, ga, callback);
    write_file(rep_dir + "/stats.csv", stats_csv.str());
    save_population_hex(record.final_population, rep_dir + "/final_population.hex");

    std::ostringstream fitness_csv;
    fitness_csv << version_comment(replicate_seed);
    fitness_csv << "genome_id,f\n";
    std::size_t best = 0;
    for (std::size_t i = 0; i < record.final_fitness.size(); ++i) {
        fitness_csv << i << ',' << fmt_double(record.final_fitness[i]) << '\n';
        if (record.final_fitness[i] > record.final_fitness[best]) best = i;
    }
    write_file(rep_dir + "/final_fitness.csv", fitness_csv.str());
    save_genome_binary(record.final_population[best], rep_dir + "/best_genome.gen");
}

std::vector<std::string> replicate_dirs(const std::string& run_dir) {
    std::vector<std::string> dirs;
    for (const auto& entry : fs::directory_iterator(run_dir)) {
        if (entry.is_directory() && entry.path().filename().string().rfind("rep_", 0) == 0) {
            dirs.push_back(entry.path().string());
        }
    }
    std::sort(dirs.begin(), dirs.end());
    if (dirs.empty()) {
        throw std::runtime_error("no replicate directories (rep_*) under " + run_dir);
    }
    return dirs;
}

void require_artifact(const std::string& path) {
    if (!fs::exists(path)) throw std::runtime_error("missing run artifact: " + path);
}

Genome load_best_genome(const std::string& rep_dir) {
    require_artifact(rep_dir + "/best_genome.gen");
    return load_genome_binary(rep_dir + "/best_genome.gen");
}

// Final-generation max fitness per replicate, from the stats CSV.
double final_max_fitness(const std::string& rep_dir) {
    require_artifact(rep_dir + "/stats.csv");
    std::istringstream in(read_file(rep_dir + "/stats.csv"));
    std::string line, last;
    while (std::getline(in, line)) {
        if (!line.empty() && line[0] != '#' && line.find(',') != std::string::npos &&
            line.rfind("generation", 0) != 0) {
            last = line;
        }
    }
    if (last.empty()) throw std::runtime_error("empty stats CSV in " + rep_dir);
    std::istringstream row(last);
    std::string field;
    std::getline(row, field, ','); // generation
    std::getline(row, field, ','); // mean
    std::getline(row, field, ','); // max
    return std::stod(field);
}

std::string condition_label(const std::string& run_dir) {
    const std::string snapshot_path = run_dir + "/config.snapshot";
    require_artifact(snapshot_path);
    const ExperimentConfig cfg = parse_config_text(read_file(snapshot_path));
    if (!cfg.condition.empty()) return cfg.condition;
    return "N=" + std::to_string(cfg.ga.trial.swarm_size);
}

// The 5-size grid used for the state-transition analyses.
const std::uint32_t kStateGridSizes[] = {72, 54, 36, 18, 1};

std::vector<TrialLog> best_genome_logs(const ExperimentConfig& cfg, const Environment& env,
                                       const Genome& best, std::uint32_t swarm_size,
                                       std::uint64_t seed) {
    const auto gates = decode_gates(best);
    TrialConfig trial_cfg = cfg.ga.trial;
    trial_cfg.swarm_size = swarm_size;
    std::vector<TrialLog> logs;
    logs.reserve(trial_cfg.trials);
    for (std::uint32_t t = 0; t < trial_cfg.trials; ++t) {
        Rng rng(derive_seed(seed, swarm_size, t));
        logs.push_back(run_trial(gates, env, trial_cfg, rng));
    }
    return logs;
}

void analyze_heatmap(const ExperimentConfig& cfg, const Environment& env,
                     const std::vector<std::string>& reps, const std::string& out_prefix) {
    for (std::size_t r = 0; r < reps.size(); ++r) {
        const Genome best = load_best_genome(reps[r]);
        const std::uint64_t seed = derive_seed(cfg.ga.seed, kAnalysisStream, r);
        const auto logs = best_genome_logs(cfg, env, best, cfg.ga.trial.swarm_size, seed);
        const auto grid = occupancy_heatmap(logs);
        std::ostringstream csv;
        csv << version_comment(cfg.ga.seed);
        for (std::size_t x = 0; x < grid[0].size(); ++x) csv << (x ? "," : "") << 'x' << x;
        csv << '\n';
        for (const auto& row : grid) {
            for (std::size_t x = 0; x < row.size(); ++x) csv << (x ? "," : "") << row[x];
            csv << '\n';
        }
        write_file(out_prefix + "heatmap_" + fs::path(reps[r]).filename().string() + ".csv",
                   csv.str());
    }
}

void analyze_states(const ExperimentConfig& cfg, const Environment& env,
                    const std::vector<std::string>& reps, const std::string& out_prefix) {
    std::vector<std::array<std::uint64_t, kNumExternalStates>> per_rep;
    for (std::size_t r = 0; r < reps.size(); ++r) {
        const Genome best = load_best_genome(reps[r]);
        const std::uint64_t seed = derive_seed(cfg.ga.seed, kAnalysisStream, r);
        std::vector<TrialLog> logs;
        for (std::uint32_t size : kStateGridSizes) {
            auto sized = best_genome_logs(cfg, env, best, size, seed);
            logs.insert(logs.end(), sized.begin(), sized.end());
        }
        per_rep.push_back(state_transition_counts(logs));
    }
    std::ostringstream csv;
    csv << version_comment(cfg.ga.seed);
    csv << "code";
    for (std::size_t r = 0; r < reps.size(); ++r)
        csv << ',' << fs::path(reps[r]).filename().string();
    csv << ",mean,ci_low,ci_high\n";
    for (int s = 0; s < kNumExternalStates; ++s) {
        char code[8];
        const auto bits = external_state_at(s).bits;
        std::snprintf(code, sizeof(code), "%d%d%d%d", (bits >> 3) & 1, (bits >> 2) & 1,
                      (bits >> 1) & 1, bits & 1);
        csv << code;
        std::vector<double> samples;
        for (std::size_t r = 0; r < per_rep.size(); ++r) {
            csv << ',' << per_rep[r][s];
            samples.push_back(static_cast<double>(per_rep[r][s]));
        }
        double mean = 0.0;
        for (double v : samples) mean += v;
        mean /= static_cast<double>(samples.size());
        const auto [lo, hi] = bootstrap_mean_ci(samples, kBootstrapResamples,
                                                kBootstrapConfidence,
                                                derive_seed(cfg.ga.seed, kAnalysisStream, 0xB00, s));
        csv << ',' << fmt_double(mean) << ',' << fmt_double(lo) << ',' << fmt_double(hi) << '\n';
    }
    write_file(out_prefix + "states.csv", csv.str());
}

TransitionCounts condition_transition_counts(const ExperimentConfig& cfg, const Environment& env,
                                             const std::vector<std::string>& reps) {
    TransitionCounts total{};
    for (std::size_t r = 0; r < reps.size(); ++r) {
        const Genome best = load_best_genome(reps[r]);
        const std::uint64_t seed = derive_seed(cfg.ga.seed, kAnalysisStream, r);
        std::vector<TrialLog> logs;
        for (std::uint32_t size : kStateGridSizes) {
            auto sized = best_genome_logs(cfg, env, best, size, seed);
            logs.insert(logs.end(), sized.begin(), sized.end());
        }
        const TransitionCounts c = transition_counts(logs);
        for (int i = 0; i < kNumExternalStates; ++i)
            for (int j = 0; j < kNumExternalStates; ++j) total[i][j] += c[i][j];
    }
    return total;
}

std::string code_string(int index) {
    const auto bits = external_state_at(index).bits;
    char code[8];
    std::snprintf(code, sizeof(code), "%d%d%d%d", (bits >> 3) & 1, (bits >> 2) & 1,
                  (bits >> 1) & 1, bits & 1);
    return code;
}

void analyze_graph(const std::vector<std::string>& reps, const std::string& out_prefix,
                   std::uint64_t seed) {
    std::ostringstream csv;
    csv << version_comment(seed);
    csv << "replicate,genome_id,lscc,avg_shortest_path,unreachable_pairs,avg_betweenness,"
           "avg_degree\n";
    for (const auto& rep : reps) {
        require_artifact(rep + "/final_population.hex");
        const auto population = load_population_hex(rep + "/final_population.hex");
        const std::string rep_name = fs::path(rep).filename().string();
        for (std::size_t i = 0; i < population.size(); ++i) {
            const auto metrics = brain_graph_metrics(effective_connectivity(decode_gates(population[i])));
            csv << rep_name << ',' << i << ',' << metrics.lscc_size << ','
                << fmt_double(metrics.avg_shortest_path) << ',' << metrics.unreachable_pairs
                << ',' << fmt_double(metrics.avg_betweenness) << ','
                << fmt_double(metrics.avg_degree) << '\n';
        }
    }
    write_file(out_prefix + "graph.csv", csv.str());
}

void analyze_stats(const std::vector<std::string>& run_dirs, const std::string& out_dir) {
    if (run_dirs.size() < 2) {
        throw std::runtime_error("stats mode needs at least 2 run directories");
    }
    std::vector<std::string> labels;
    std::vector<std::vector<double>> samples;
    for (const auto& dir : run_dirs) {
        labels.push_back(condition_label(dir));
        std::vector<double> values;
        for (const auto& rep : replicate_dirs(dir)) values.push_back(final_max_fitness(rep));
        samples.push_back(std::move(values));
    }
    const KruskalWallisResult kw = kruskal_wallis(samples);
    std::ostringstream csv;
    csv << version_comment(0);
    csv << "# kruskal_wallis H=" << fmt_double(kw.h) << " p=" << fmt_double(kw.p) << '\n';
    csv << "group_a,group_b,U,p\n";
    for (std::size_t i = 0; i < samples.size(); ++i) {
        for (std::size_t j = i + 1; j < samples.size(); ++j) {
            const MannWhitneyResult mw = mann_whitney_u(samples[i], samples[j]);
            csv << labels[i] << ',' << labels[j] << ',' << fmt_double(mw.u) << ','
                << fmt_double(mw.p) << '\n';
        }
    }
    write_file(out_dir + "/stats.csv", csv.str());
}

} // namespace

void run_evolve(const ExperimentConfig& cfg, const std::string& out_dir) {
    const Environment env = cfg.make_environment();
    fs::create_directories(out_dir);
    const std::string snapshot = serialize_config(cfg);
    const std::string snapshot_path = out_dir + "/config.snapshot";
    if (fs::exists(snapshot_path)) {
        if (read_file(snapshot_path) != snapshot) {
            throw std::runtime_error("refusing to resume: existing snapshot in " + out_dir +
                                     " does not match this configuration");
        }
    } else {
        write_file(snapshot_path, snapshot);
    }
    for (std::uint32_t r = 0; r < cfg.replicates; ++r) {
        const std::uint64_t replicate_seed = derive_seed(cfg.ga.seed, kReplicateStream, r);
        run_replicate(cfg, env, out_dir + "/" + rep_dir_name(r), replicate_seed);
    }
}

Genome load_genome_any(const std::string& path) {
    try {
        return load_genome_binary(path);
    } catch (const std::exception&) {
        const std::string text = read_file(path);
        const auto end = text.find('\n');
        return genome_from_hex(end == std::string::npos ? text : text.substr(0, end));
    }
}

void run_sweep(const ExperimentConfig& cfg, const std::string& genome_path,
               const std::string& out_csv) {
    const Genome g = load_genome_any(genome_path);
    const Environment env = cfg.make_environment();
    const SweepResult result = generalizability_sweep(g, env, cfg.ga.trial, cfg.ga.seed);
    std::ostringstream csv;
    csv << version_comment(cfg.ga.seed);
    for (std::size_t i = 0; i < result.entries.size(); ++i)
        csv << (i ? "," : "") << result.entries[i].swarm_size;
    csv << '\n';
    for (std::size_t i = 0; i < result.entries.size(); ++i)
        csv << (i ? "," : "") << fmt_double(result.entries[i].mean_fitness);
    csv << '\n';
    csv << "# auc=" << fmt_double(result.auc) << '\n';
    write_file(out_csv, csv.str());
}

void run_single_trial(const ExperimentConfig& cfg, const std::string& genome_path,
                      const std::string& out_csv) {
    const Genome g = load_genome_any(genome_path);
    const Environment env = cfg.make_environment();
    Rng rng(cfg.ga.seed);
    const TrialLog log = run_trial(decode_gates(g), env, cfg.ga.trial, rng);
    write_file(out_csv, version_comment(cfg.ga.seed) + trial_log_to_csv(log));
}

void append_fitness_report_csv(const std::string& path, std::uint32_t generation,
                               std::uint32_t genome_id, const FitnessReport& report,
                               std::uint64_t seed) {
    const bool fresh = !fs::exists(path);
    std::ofstream out(path, std::ios::app);
    if (!out) throw std::runtime_error("cannot open " + path + " for appending");
    if (fresh) {
        out << version_comment(seed);
        out << "generation,genome_id,trial,tracked_animat,f\n";
    }
    for (std::size_t t = 0; t < report.trial_fitness.size(); ++t) {
        out << generation << ',' << genome_id << ',' << t << ',' << report.tracked_animat[t]
            << ',' << fmt_double(report.trial_fitness[t]) << '\n';
    }
    out << generation << ',' << genome_id << ",summary,," << fmt_double(report.mean) << '\n';
}

void run_analyze(const std::vector<std::string>& run_dirs, const std::string& mode,
                 const std::string& out_dir) {
    if (run_dirs.empty()) throw std::runtime_error("analyze: no run directories given");
    fs::create_directories(out_dir);
    if (mode == "stats") {
        analyze_stats(run_dirs, out_dir);
        return;
    }
    if (mode == "tpm") {
        std::vector<TransitionCounts> conditions;
        std::vector<std::string> labels;
        for (const auto& dir : run_dirs) {
            const ExperimentConfig cfg = parse_config_text(read_file(dir + "/config.snapshot"));
            const Environment env = cfg.make_environment();
            conditions.push_back(condition_transition_counts(cfg, env, replicate_dirs(dir)));
            labels.push_back(condition_label(dir));
        }
        const auto scaled = scale_transition_matrices(conditions);
        std::ostringstream csv;
        csv << version_comment(0);
        csv << "from,to";
        for (const auto& label : labels) csv << ',' << label << "_count," << label << "_scaled";
        csv << '\n';
        for (int i = 0; i < kNumExternalStates; ++i) {
            for (int j = 0; j < kNumExternalStates; ++j) {
                csv << code_string(i) << ',' << code_string(j);
                for (std::size_t k = 0; k < conditions.size(); ++k) {
                    csv << ',' << conditions[k][i][j] << ',' << fmt_double(scaled[k][i][j]);
                }
                csv << '\n';
            }
        }
        write_file(out_dir + "/tpm.csv", csv.str());
        return;
    }
    // Per-run-dir modes.
    for (const auto& dir : run_dirs) {
        require_artifact(dir + "/config.snapshot");
        const ExperimentConfig cfg = parse_config_text(read_file(dir + "/config.snapshot"));
        const Environment env = cfg.make_environment();
        const auto reps = replicate_dirs(dir);
        // Outputs keyed by condition so several run dirs can share out_dir.
        const std::string prefix = out_dir + "/" + condition_label(dir) + "_";
        if (mode == "heatmap") analyze_heatmap(cfg, env, reps, prefix);
        else if (mode == "states") analyze_states(cfg, env, reps, prefix);
        else if (mode == "graph") analyze_graph(reps, prefix, cfg.ga.seed);
        else throw std::runtime_error("unknown analyze mode: " + mode);
    }
}

} // namespace animat
