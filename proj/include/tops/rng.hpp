#pragma once

// Reproducible randomness: mt19937_64 (output pinned by the C++ standard),
// normal variates via the Wichura AS241 inverse CDF, bounded integers by
// rejection. std distributions are implementation-defined and not used.

#include <cstdint>
#include <random>

namespace tops {

std::uint64_t splitmix64(std::uint64_t& state);

/// Stable per-stream seed derivation from a base seed.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

/// Inverse CDF of the standard normal (AS241, double precision).
double normal_icdf(double p);

class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    /// Uniform in [0, 1) with 53-bit resolution.
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    /// Uniform strictly inside (0, 1).
    double uniform_open() { return (static_cast<double>(gen_() >> 11) + 0.5) * 0x1.0p-53; }

    double normal() { return normal_icdf(uniform_open()); }

    /// Uniform integer in [0, bound) by rejection.
    std::uint64_t below(std::uint64_t bound);

    /// Uniform integer in [lo, hi] inclusive.
    int uniform_int(int lo, int hi) {
        return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo) + 1));
    }

    std::uint64_t raw() { return gen_(); }

private:
    std::mt19937_64 gen_;
};

}  // namespace tops
