#include "animat/evolution.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace animat {

namespace {
// Stream-id tags keeping the per-purpose RNG streams disjoint.
constexpr std::uint64_t kEvalStream = 0x45564101;      // evaluation
constexpr std::uint64_t kBreedStream = 0x42524544;     // selection + mutation
constexpr std::uint64_t kInitStream = 0x494e4954;      // generation 0
} // namespace

std::size_t tournament_select(const std::vector<double>& fitnesses, std::uint32_t k, Rng& rng) {
    if (fitnesses.empty()) throw std::invalid_argument("tournament_select: empty fitness list");
    if (k == 0) throw std::invalid_argument("tournament_select: k must be >= 1");
    std::size_t best = rng.uniform_u32(static_cast<std::uint32_t>(fitnesses.size()));
    for (std::uint32_t draw = 1; draw < k; ++draw) {
        const std::size_t idx = rng.uniform_u32(static_cast<std::uint32_t>(fitnesses.size()));
        if (fitnesses[idx] > fitnesses[best]) best = idx; // ties: first draw wins
    }
    return best;
}

std::vector<Genome> next_generation(const std::vector<Genome>& population,
                                    const std::vector<double>& fitnesses, const GAConfig& cfg,
                                    Rng& rng) {
    if (population.size() != cfg.population_size) {
        throw std::invalid_argument("population size mismatch");
    }
    std::vector<Genome> offspring;
    offspring.reserve(cfg.population_size);
    for (std::uint32_t i = 0; i < cfg.population_size; ++i) {
        const std::size_t parent = tournament_select(fitnesses, cfg.tournament_size, rng);
        offspring.push_back(mutate(population[parent], cfg.mutation, rng));
    }
    return offspring;
}

std::vector<double> evaluate_population(const std::vector<Genome>& population,
                                        const Environment& env, const GAConfig& cfg,
                                        std::uint32_t generation) {
    std::vector<double> fitness(population.size(), 0.0);
    const std::uint32_t requested = cfg.threads ? cfg.threads : std::thread::hardware_concurrency();
    const std::uint32_t workers =
        std::max<std::uint32_t>(1, std::min<std::uint32_t>(requested,
                                                           static_cast<std::uint32_t>(population.size())));
    auto eval_one = [&](std::size_t i) {
        const std::uint64_t seed = derive_seed(cfg.seed, kEvalStream, generation, i);
        fitness[i] = genome_fitness(population[i], env, cfg.trial, seed).mean;
    };
    if (workers == 1) {
        for (std::size_t i = 0; i < population.size(); ++i) eval_one(i);
        return fitness;
    }
    std::atomic<std::size_t> cursor{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::uint32_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = cursor.fetch_add(1);
                if (i >= population.size()) return;
                eval_one(i);
            }
        });
    }
    for (auto& t : pool) t.join();
    return fitness;
}

GenerationStats summarize(const std::vector<double>& fitnesses) {
    GenerationStats stats;
    if (fitnesses.empty()) return stats;
    double sum = 0.0;
    stats.max_fitness = fitnesses[0];
    for (double f : fitnesses) {
        sum += f;
        if (f > stats.max_fitness) stats.max_fitness = f;
    }
    stats.mean_fitness = sum / static_cast<double>(fitnesses.size());
    if (fitnesses.size() > 1) {
        double ss = 0.0;
        for (double f : fitnesses) {
            const double d = f - stats.mean_fitness;
            ss += d * d;
        }
        const double variance = ss / static_cast<double>(fitnesses.size() - 1);
        stats.sem = std::sqrt(variance / static_cast<double>(fitnesses.size()));
    }
    return stats;
}

EvolutionRecord evolve(const Environment& env, const GAConfig& cfg,
                       const GenerationCallback& callback) {
    EvolutionRecord record;
    record.generations.reserve(cfg.generations + 1);

    Rng init_rng(derive_seed(cfg.seed, kInitStream));
    std::vector<Genome> population;
    population.reserve(cfg.population_size);
    for (std::uint32_t i = 0; i < cfg.population_size; ++i) {
        population.push_back(new_random_genome(cfg.initial_genome_size, cfg.mutation, init_rng));
        seed_start_codons(population.back(), cfg.initial_start_codons, init_rng);
    }

    std::vector<double> fitness = evaluate_population(population, env, cfg, 0);
    GenerationStats stats = summarize(fitness);
    record.generations.push_back(stats);
    if (callback) callback(0, population, fitness, stats);

    for (std::uint32_t g = 1; g <= cfg.generations; ++g) {
        Rng breed_rng(derive_seed(cfg.seed, kBreedStream, g));
        population = next_generation(population, fitness, cfg, breed_rng);
        fitness = evaluate_population(population, env, cfg, g);
        stats = summarize(fitness);
        record.generations.push_back(stats);
        if (callback) callback(g, population, fitness, stats);
    }
    record.final_population = std::move(population);
    record.final_fitness = std::move(fitness);
    return record;
}

} // namespace animat
