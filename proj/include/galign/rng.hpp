#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <string_view>

#include "galign/errors.hpp"

namespace galign {

/// Deterministic random source. The engine (mt19937_64) is fully specified
/// by the standard; the distributions below are hand-rolled because the
/// std:: ones are implementation-defined, and generated datasets must be
/// byte-identical across toolchains.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform in [0, 1), 53 random bits.
    double next_double() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform in [0, bound), unbiased via rejection.
    int next_int(int bound) {
        if (bound <= 0)
            throw argument_error("Rng::next_int: bound must be positive");
        const auto b = static_cast<std::uint64_t>(bound);
        const std::uint64_t limit =
            std::numeric_limits<std::uint64_t>::max() -
            std::numeric_limits<std::uint64_t>::max() % b;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return static_cast<int>(x % b);
    }

    bool bernoulli(double p) { return next_double() < p; }

private:
    std::mt19937_64 engine_;
};

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Stable per-sample seed: hash of (master seed, split tag, sample index).
/// Samples own their streams, so generation order and worker count cannot
/// change the output.
inline std::uint64_t derive_seed(std::uint64_t master, std::string_view tag,
                                 std::uint64_t index) {
    std::uint64_t h = 0xcbf29ce484222325ULL ^ master;
    for (unsigned char c : tag) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return splitmix64(splitmix64(h) ^ splitmix64(index));
}

} // namespace galign
