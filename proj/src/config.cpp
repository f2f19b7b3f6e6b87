#include "animat/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace animat {

std::uint32_t condition_swarm_size(const std::string& label) {
    if (label == "G_single") return 1;
    if (label == "G_0.25") return 18;
    if (label == "G_0.50") return 36;
    if (label == "G_0.75") return 54;
    if (label == "G_1.00") return 72;
    throw std::runtime_error("unknown condition label: " + label);
}

Environment ExperimentConfig::make_environment() const {
    if (map == "default") return default_environment();
    std::ifstream in(map);
    if (!in) throw std::runtime_error("cannot open map file: " + map);
    std::ostringstream text;
    text << in.rdbuf();
    return load_environment(text.str());
}

ExperimentConfig default_experiment_config() { return ExperimentConfig{}; }

namespace {

std::uint32_t parse_u32(const std::string& key, const std::string& value) {
    try {
        const unsigned long v = std::stoul(value);
        return static_cast<std::uint32_t>(v);
    } catch (const std::exception&) {
        throw std::runtime_error("invalid value for " + key + ": " + value);
    }
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
    try {
        return std::stoull(value);
    } catch (const std::exception&) {
        throw std::runtime_error("invalid value for " + key + ": " + value);
    }
}

double parse_real(const std::string& key, const std::string& value) {
    try {
        return std::stod(value);
    } catch (const std::exception&) {
        throw std::runtime_error("invalid value for " + key + ": " + value);
    }
}

} // namespace

void apply_key_value(ExperimentConfig& cfg, const std::string& key, const std::string& value) {
    if (key == "map") cfg.map = value;
    else if (key == "condition") {
        cfg.condition = value;
        cfg.ga.trial.swarm_size = condition_swarm_size(value);
    }
    else if (key == "swarm_size") { cfg.condition.clear(); cfg.ga.trial.swarm_size = parse_u32(key, value); }
    else if (key == "replicates") cfg.replicates = parse_u32(key, value);
    else if (key == "output_dir") cfg.output_dir = value;
    else if (key == "population_size") cfg.ga.population_size = parse_u32(key, value);
    else if (key == "tournament_size") cfg.ga.tournament_size = parse_u32(key, value);
    else if (key == "generations") cfg.ga.generations = parse_u32(key, value);
    else if (key == "initial_genome_size") cfg.ga.initial_genome_size = parse_u32(key, value);
    else if (key == "initial_start_codons") cfg.ga.initial_start_codons = parse_u32(key, value);
    else if (key == "checkpoint_every") cfg.ga.checkpoint_every = parse_u32(key, value);
    else if (key == "threads") cfg.ga.threads = parse_u32(key, value);
    else if (key == "seed") cfg.ga.seed = parse_u64(key, value);
    else if (key == "point_rate") cfg.ga.mutation.point_rate = parse_real(key, value);
    else if (key == "copy_delete_rate") cfg.ga.mutation.copy_delete_rate = parse_real(key, value);
    else if (key == "segment_min") cfg.ga.mutation.segment_min = parse_u32(key, value);
    else if (key == "segment_max") cfg.ga.mutation.segment_max = parse_u32(key, value);
    else if (key == "genome_min") cfg.ga.mutation.size_min = parse_u32(key, value);
    else if (key == "genome_max") cfg.ga.mutation.size_max = parse_u32(key, value);
    else if (key == "steps") cfg.ga.trial.steps = parse_u32(key, value);
    else if (key == "timeout") cfg.ga.trial.timeout = parse_u32(key, value);
    else if (key == "reward") cfg.ga.trial.reward = parse_real(key, value);
    else if (key == "penalty") cfg.ga.trial.penalty = parse_real(key, value);
    else if (key == "trials") cfg.ga.trial.trials = parse_u32(key, value);
    else throw std::runtime_error("unknown config key: " + key);
}

ExperimentConfig parse_config_text(const std::string& text) {
    ExperimentConfig cfg = default_experiment_config();
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        // trim
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        const auto last = line.find_last_not_of(" \t\r");
        line = line.substr(first, last - first + 1);
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::runtime_error("config line " + std::to_string(line_no) +
                                     ": expected key=value, got '" + line + "'");
        }
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t");
            const auto b = s.find_last_not_of(" \t");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        apply_key_value(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return cfg;
}

ExperimentConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config_text(text.str());
}

std::string serialize_config(const ExperimentConfig& cfg) {
    std::ostringstream out;
    out << "map=" << cfg.map << '\n';
    if (!cfg.condition.empty())
        out << "condition=" << cfg.condition << '\n';
    else
        out << "swarm_size=" << cfg.ga.trial.swarm_size << '\n';
    out << "replicates=" << cfg.replicates << '\n'
        << "population_size=" << cfg.ga.population_size << '\n'
        << "tournament_size=" << cfg.ga.tournament_size << '\n'
        << "generations=" << cfg.ga.generations << '\n'
        << "initial_genome_size=" << cfg.ga.initial_genome_size << '\n'
        << "initial_start_codons=" << cfg.ga.initial_start_codons << '\n'
        << "checkpoint_every=" << cfg.ga.checkpoint_every << '\n'
        << "seed=" << cfg.ga.seed << '\n'
        << "point_rate=" << cfg.ga.mutation.point_rate << '\n'
        << "copy_delete_rate=" << cfg.ga.mutation.copy_delete_rate << '\n'
        << "segment_min=" << cfg.ga.mutation.segment_min << '\n'
        << "segment_max=" << cfg.ga.mutation.segment_max << '\n'
        << "genome_min=" << cfg.ga.mutation.size_min << '\n'
        << "genome_max=" << cfg.ga.mutation.size_max << '\n'
        << "steps=" << cfg.ga.trial.steps << '\n'
        << "timeout=" << cfg.ga.trial.timeout << '\n'
        << "reward=" << cfg.ga.trial.reward << '\n'
        << "penalty=" << cfg.ga.trial.penalty << '\n'
        << "trials=" << cfg.ga.trial.trials << '\n';
    return out.str();
}

} // namespace animat
