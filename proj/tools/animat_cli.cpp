// Command-line front end; talks to the core exclusively through the C API.

#include "animat_c.h"

#include <CLI11.hpp>

#include <cstdio>
#include <memory>
#include <string>
#include <vector>

namespace {

struct ConfigDeleter {
    void operator()(an_config* cfg) const { an_config_destroy(cfg); }
};
using ConfigPtr = std::unique_ptr<an_config, ConfigDeleter>;

int die(an_status status) {
    std::fprintf(stderr, "error: %s\n", an_last_error());
    return static_cast<int>(status);
}

// Builds a config from --config and repeated --set key=value overrides.
an_status build_config(ConfigPtr& cfg, const std::string& config_path,
                       const std::vector<std::string>& overrides) {
    cfg.reset(an_config_create());
    if (!config_path.empty()) {
        if (an_status s = an_config_load(cfg.get(), config_path.c_str())) return s;
    }
    for (const auto& kv : overrides) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) {
            std::fprintf(stderr, "error: --set expects key=value, got '%s'\n", kv.c_str());
            return AN_ERR_INVALID_ARGUMENT;
        }
        if (an_status s = an_config_set(cfg.get(), kv.substr(0, eq).c_str(),
                                        kv.substr(eq + 1).c_str())) {
            return s;
        }
    }
    return AN_OK;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Evolve and analyze swarm animats in a two-room grid world"};
    app.require_subcommand(1);

    std::string config_path;
    std::vector<std::string> overrides;
    app.add_option("-c,--config", config_path, "key=value config file");
    app.add_option("-s,--set", overrides, "override a config key (key=value)");

    auto* evolve = app.add_subcommand("evolve", "run the evolution experiment");
    std::string evolve_out;
    evolve->add_option("-o,--out", evolve_out, "run output directory")->required();

    auto* sweep = app.add_subcommand("sweep", "generalizability sweep for a genome");
    std::string sweep_genome, sweep_out;
    sweep->add_option("genome", sweep_genome, "genome file (.gen binary or hex line)")->required();
    sweep->add_option("-o,--out", sweep_out, "output CSV")->required();

    auto* trial = app.add_subcommand("trial", "single trial with full log dump");
    std::string trial_genome, trial_out;
    trial->add_option("genome", trial_genome, "genome file")->required();
    trial->add_option("-o,--out", trial_out, "output CSV log")->required();

    auto* analyze = app.add_subcommand("analyze", "post-hoc analysis of run directories");
    std::vector<std::string> analyze_runs;
    std::string analyze_mode, analyze_out;
    analyze->add_option("-r,--run", analyze_runs, "completed run directory (repeatable)")
        ->required();
    analyze->add_option("-m,--mode", analyze_mode, "heatmap|states|tpm|graph|stats")->required();
    analyze->add_option("-o,--out", analyze_out, "output directory")->required();

    CLI11_PARSE(app, argc, argv);

    ConfigPtr cfg;
    if (an_status s = build_config(cfg, config_path, overrides)) return die(s);

    if (evolve->parsed()) {
        if (an_status s = an_run_evolve(cfg.get(), evolve_out.c_str())) return die(s);
        std::printf("run written to %s\n", evolve_out.c_str());
    } else if (sweep->parsed()) {
        if (an_status s = an_run_sweep(cfg.get(), sweep_genome.c_str(), sweep_out.c_str()))
            return die(s);
        std::printf("sweep written to %s\n", sweep_out.c_str());
    } else if (trial->parsed()) {
        if (an_status s = an_run_trial(cfg.get(), trial_genome.c_str(), trial_out.c_str()))
            return die(s);
        std::printf("trial log written to %s\n", trial_out.c_str());
    } else if (analyze->parsed()) {
        std::vector<const char*> dirs;
        dirs.reserve(analyze_runs.size());
        for (const auto& d : analyze_runs) dirs.push_back(d.c_str());
        if (an_status s = an_run_analyze(dirs.data(), dirs.size(), analyze_mode.c_str(),
                                         analyze_out.c_str())) {
            return die(s);
        }
        std::printf("analysis written to %s\n", analyze_out.c_str());
    }
    return 0;
}
