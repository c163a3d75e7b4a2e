#pragma once

#include <cstdint>
#include <utility>

namespace grandmp {

/// SplitMix64 counter-based generator (Steele/Lea/Flood constants). The whole
/// output sequence is a pure function of the seed, so streams replay
/// bit-exactly on any platform.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1), 53 random bits.
    double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    bool next_bit() { return next() & 1u; }

    /// One Box-Muller transform: two independent standard normal deviates.
    std::pair<double, double> next_gaussian_pair();

private:
    std::uint64_t state_;
};

/// Derive a statistically independent stream seed from (master, a, b).
/// Used to give every (grid point, trial) its own replayable stream.
std::uint64_t derive_stream(std::uint64_t master, std::uint64_t a, std::uint64_t b);

}  // namespace grandmp
