#pragma once

#include <cstdint>
#include <random>

namespace animat {

// All randomness in the project flows through this wrapper. The standard
// distributions are implementation-defined, so bounded draws are done by
// hand to keep outputs identical across toolchains.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform integer in [0, bound), bound > 0. Rejection sampling to avoid
    // modulo bias.
    std::uint32_t uniform_u32(std::uint32_t bound) {
        const std::uint64_t span = bound;
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return static_cast<std::uint32_t>(x % span);
    }

    std::uint8_t uniform_byte() { return static_cast<std::uint8_t>(uniform_u32(256)); }

    // Uniform double in [0, 1) with 53 bits of precision.
    double uniform_real() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    bool bernoulli(double p) {
        if (p <= 0.0) return false;
        if (p >= 1.0) return true;
        return uniform_real() < p;
    }

private:
    std::mt19937_64 engine_;
};

// splitmix64 finalizer; used to mix hierarchical stream ids into seeds.
inline std::uint64_t mix_u64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a) {
    return mix_u64(seed ^ mix_u64(a));
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    return derive_seed(derive_seed(seed, a), b);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b,
                                 std::uint64_t c) {
    return derive_seed(derive_seed(seed, a, b), c);
}

} // namespace animat
