#pragma once

#include "animat/evaluation.hpp"
#include "animat/genome.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace animat {

struct GAConfig {
    std::uint32_t population_size = 100;
    std::uint32_t tournament_size = 5;
    std::uint32_t generations = 10000;
    std::uint32_t initial_genome_size = 5000;
    std::uint32_t initial_start_codons = 30;
    std::uint32_t checkpoint_every = 100;
    std::uint32_t threads = 0; // 0 = hardware concurrency
    std::uint64_t seed = 1;
    MutationParams mutation;
    TrialConfig trial;
};

struct GenerationStats {
    double mean_fitness = 0.0;
    double max_fitness = 0.0;
    double sem = 0.0; // standard error of the population mean
};

struct EvolutionRecord {
    std::vector<GenerationStats> generations; // index 0 = initial population
    std::vector<Genome> final_population;
    std::vector<double> final_fitness;
};

// Called after each generation's evaluation; checkpoint hook.
using GenerationCallback =
    std::function<void(std::uint32_t generation, const std::vector<Genome>& population,
                       const std::vector<double>& fitness, const GenerationStats& stats)>;

// k uniform draws with replacement; highest fitness wins, ties go to the
// earliest draw.
std::size_t tournament_select(const std::vector<double>& fitnesses, std::uint32_t k, Rng& rng);

// population_size offspring, each a mutated copy of a tournament winner.
std::vector<Genome> next_generation(const std::vector<Genome>& population,
                                    const std::vector<double>& fitnesses, const GAConfig& cfg,
                                    Rng& rng);

// Evaluates every genome over |R| trials (parallel across the population,
// bit-identical to serial execution).
std::vector<double> evaluate_population(const std::vector<Genome>& population,
                                        const Environment& env, const GAConfig& cfg,
                                        std::uint32_t generation);

EvolutionRecord evolve(const Environment& env, const GAConfig& cfg,
                       const GenerationCallback& callback = nullptr);

GenerationStats summarize(const std::vector<double>& fitnesses);

} // namespace animat
