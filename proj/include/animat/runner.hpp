#pragma once

#include "animat/analysis.hpp"
#include "animat/config.hpp"

#include <string>
#include <vector>

namespace animat {

inline constexpr const char* kToolVersion = "0.1.0";

// Runs every replicate and writes the run directory: config snapshot,
// per-generation stats CSV, population checkpoints, final population and
// fitness. Refuses to reuse a directory whose snapshot differs.
void run_evolve(const ExperimentConfig& cfg, const std::string& out_dir);

// 21-size generalizability sweep for one persisted genome; CSV with an AUC
// footer line.
void run_sweep(const ExperimentConfig& cfg, const std::string& genome_path,
               const std::string& out_csv);

// Single debug trial with the full per-step log dumped as CSV.
void run_single_trial(const ExperimentConfig& cfg, const std::string& genome_path,
                      const std::string& out_csv);

// Post-hoc analyses over completed run directories. Modes: heatmap, states,
// tpm, graph, stats. tpm and stats compare across the given run dirs.
void run_analyze(const std::vector<std::string>& run_dirs, const std::string& mode,
                 const std::string& out_dir);

// Loads a genome from a binary (length-prefixed) or hex-line file.
Genome load_genome_any(const std::string& path);

// Per-trial fitness rows plus a summary row with the mean.
void append_fitness_report_csv(const std::string& path, std::uint32_t generation,
                               std::uint32_t genome_id, const FitnessReport& report,
                               std::uint64_t seed);

} // namespace animat
