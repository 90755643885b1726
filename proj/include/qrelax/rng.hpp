#pragma once

#include <cstdint>

namespace qrelax {

/// splitmix64; cheap, seedable, and good enough for sampling substreams.
struct SplitMix64 {
    std::uint64_t state = 0;

    explicit SplitMix64(std::uint64_t s) : state(s) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

/// Counter-based substream for one particle: the stream state is a hash of
/// (seed, index), so draws are reproducible independently of thread count and
/// particle processing order.
inline SplitMix64 substream(std::uint64_t seed, std::uint64_t index) {
    SplitMix64 g(seed + (index + 1) * 0x9E3779B97F4A7C15ULL);
    g.next();  // decorrelate adjacent indices
    return g;
}

}  // namespace qrelax
