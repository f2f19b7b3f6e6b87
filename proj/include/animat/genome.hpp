#pragma once

#include "animat/rng.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace animat {

// Circular byte string; index arithmetic wraps.
struct Genome {
    std::vector<std::uint8_t> sites;

    std::size_t size() const { return sites.size(); }
    std::uint8_t at_wrapped(std::size_t i) const { return sites[i % sites.size()]; }

    bool operator==(const Genome&) const = default;
};

struct MutationParams {
    double point_rate = 0.005;
    double copy_delete_rate = 0.00002;
    std::size_t segment_min = 128;
    std::size_t segment_max = 512;
    std::size_t size_min = 2000;
    std::size_t size_max = 20000;
};

Genome new_random_genome(std::size_t length, const MutationParams& params, Rng& rng);

// Writes `count` gate start codons at uniform positions. Random genomes
// almost never contain one by chance, so fresh populations would otherwise
// start gateless with no selection gradient.
void seed_start_codons(Genome& g, std::uint32_t count, Rng& rng);

// Each site independently replaced by a uniform symbol with probability
// point_rate. Length is preserved.
Genome point_mutate(const Genome& g, const MutationParams& params, Rng& rng);

// Segment duplications and deletions. Event counts are binomial over the
// genome length; each event picks a uniform length in [segment_min,
// segment_max] and a uniform circular start. Copies insert the duplicate
// right after the source segment; events that would leave the size bounds
// are skipped.
Genome copy_delete_mutate(const Genome& g, const MutationParams& params, Rng& rng);

// Point mutation first, then copy/delete. Fixed order for determinism.
Genome mutate(const Genome& g, const MutationParams& params, Rng& rng);

// Binary format: 8-byte little-endian site count, then raw bytes.
void save_genome_binary(const Genome& g, const std::string& path);
Genome load_genome_binary(const std::string& path);

// Text format: hex string, one genome per line.
std::string genome_to_hex(const Genome& g);
Genome genome_from_hex(const std::string& line);
void save_population_hex(const std::vector<Genome>& pop, const std::string& path);
std::vector<Genome> load_population_hex(const std::string& path);

} // namespace animat
