#include "animat/genome.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace animat {

Genome new_random_genome(std::size_t length, const MutationParams& params, Rng& rng) {
    if (length < params.size_min || length > params.size_max) {
        throw std::invalid_argument("genome length " + std::to_string(length) +
                                    " outside [" + std::to_string(params.size_min) + ", " +
                                    std::to_string(params.size_max) + "]");
    }
    Genome g;
    g.sites.resize(length);
    for (auto& s : g.sites) s = rng.uniform_byte();
    return g;
}

void seed_start_codons(Genome& g, std::uint32_t count, Rng& rng) {
    if (g.sites.size() < 2) return;
    for (std::uint32_t i = 0; i < count; ++i) {
        const std::size_t at = rng.uniform_u32(static_cast<std::uint32_t>(g.sites.size()));
        g.sites[at] = 42;
        g.sites[(at + 1) % g.sites.size()] = 213;
    }
}

Genome point_mutate(const Genome& g, const MutationParams& params, Rng& rng) {
    Genome out = g;
    if (params.point_rate <= 0.0) return out;
    for (auto& s : out.sites) {
        if (rng.bernoulli(params.point_rate)) s = rng.uniform_byte();
    }
    return out;
}

namespace {

std::size_t binomial_count(std::size_t n, double p, Rng& rng) {
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (rng.bernoulli(p)) ++k;
    }
    return k;
}

void copy_segment(std::vector<std::uint8_t>& sites, std::size_t start, std::size_t len) {
    const std::size_t n = sites.size();
    std::vector<std::uint8_t> segment(len);
    for (std::size_t i = 0; i < len; ++i) segment[i] = sites[(start + i) % n];
    // Insert right after the source segment (circular end position).
    const std::size_t insert_at = start + len <= n ? start + len : (start + len) % n;
    sites.insert(sites.begin() + static_cast<std::ptrdiff_t>(insert_at),
                 segment.begin(), segment.end());
}

void delete_segment(std::vector<std::uint8_t>& sites, std::size_t start, std::size_t len) {
    const std::size_t n = sites.size();
    if (start + len <= n) {
        sites.erase(sites.begin() + static_cast<std::ptrdiff_t>(start),
                    sites.begin() + static_cast<std::ptrdiff_t>(start + len));
    } else {
        const std::size_t tail = n - start;
        sites.erase(sites.begin() + static_cast<std::ptrdiff_t>(start), sites.end());
        sites.erase(sites.begin(), sites.begin() + static_cast<std::ptrdiff_t>(len - tail));
    }
}

} // namespace

Genome copy_delete_mutate(const Genome& g, const MutationParams& params, Rng& rng) {
    Genome out = g;
    if (params.copy_delete_rate <= 0.0) return out;

    const std::size_t n_copies = binomial_count(out.sites.size(), params.copy_delete_rate, rng);
    const std::size_t n_deletes = binomial_count(out.sites.size(), params.copy_delete_rate, rng);
    const std::size_t span = params.segment_max - params.segment_min + 1;

    for (std::size_t e = 0; e < n_copies; ++e) {
        const std::size_t len = params.segment_min + rng.uniform_u32(static_cast<std::uint32_t>(span));
        const std::size_t start = rng.uniform_u32(static_cast<std::uint32_t>(out.sites.size()));
        if (out.sites.size() + len > params.size_max) continue; // skip, keep bounds
        copy_segment(out.sites, start, len);
    }
    for (std::size_t e = 0; e < n_deletes; ++e) {
        const std::size_t len = params.segment_min + rng.uniform_u32(static_cast<std::uint32_t>(span));
        const std::size_t start = rng.uniform_u32(static_cast<std::uint32_t>(out.sites.size()));
        if (out.sites.size() < params.size_min + len) continue;
        delete_segment(out.sites, start, len);
    }
    return out;
}

Genome mutate(const Genome& g, const MutationParams& params, Rng& rng) {
    return copy_delete_mutate(point_mutate(g, params, rng), params, rng);
}

void save_genome_binary(const Genome& g, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    const std::uint64_t n = g.sites.size();
    std::uint8_t header[8];
    for (int i = 0; i < 8; ++i) header[i] = static_cast<std::uint8_t>((n >> (8 * i)) & 0xff);
    out.write(reinterpret_cast<const char*>(header), 8);
    out.write(reinterpret_cast<const char*>(g.sites.data()),
              static_cast<std::streamsize>(g.sites.size()));
    if (!out) throw std::runtime_error("write failed: " + path);
}

Genome load_genome_binary(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::uint8_t header[8];
    in.read(reinterpret_cast<char*>(header), 8);
    if (in.gcount() != 8) throw std::runtime_error("genome file truncated at offset 0: " + path);
    std::uint64_t n = 0;
    for (int i = 0; i < 8; ++i) n |= static_cast<std::uint64_t>(header[i]) << (8 * i);
    Genome g;
    g.sites.resize(n);
    in.read(reinterpret_cast<char*>(g.sites.data()), static_cast<std::streamsize>(n));
    if (static_cast<std::uint64_t>(in.gcount()) != n) {
        throw std::runtime_error("genome file truncated at offset " +
                                 std::to_string(8 + in.gcount()) + ": " + path);
    }
    return g;
}

std::string genome_to_hex(const Genome& g) {
    static const char* digits = "0123456789abcdef";
    std::string s;
    s.reserve(g.sites.size() * 2);
    for (auto b : g.sites) {
        s.push_back(digits[b >> 4]);
        s.push_back(digits[b & 0xf]);
    }
    return s;
}

namespace {
int hex_value(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}
} // namespace

Genome genome_from_hex(const std::string& line) {
    if (line.size() % 2 != 0) throw std::runtime_error("odd-length hex genome");
    Genome g;
    g.sites.reserve(line.size() / 2);
    for (std::size_t i = 0; i < line.size(); i += 2) {
        const int hi = hex_value(line[i]);
        const int lo = hex_value(line[i + 1]);
        if (hi < 0 || lo < 0) {
            throw std::runtime_error("invalid hex digit at offset " + std::to_string(i));
        }
        g.sites.push_back(static_cast<std::uint8_t>(hi * 16 + lo));
    }
    return g;
}

void save_population_hex(const std::vector<Genome>& pop, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    for (const auto& g : pop) out << genome_to_hex(g) << '\n';
    if (!out) throw std::runtime_error("write failed: " + path);
}

std::vector<Genome> load_population_hex(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::vector<Genome> pop;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        pop.push_back(genome_from_hex(line));
    }
    return pop;
}

} // namespace animat
