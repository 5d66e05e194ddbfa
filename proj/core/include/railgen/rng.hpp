#pragma once

#include <cmath>
#include <cstdint>

namespace railgen {

// Deterministic random stream used everywhere randomness is needed.
//
// The standard <random> distributions are not bit-stable across library
// implementations, so generated datasets would stop being reproducible
// the moment the toolchain changes. This generator (splitmix64) and the
// distribution helpers below are pinned algorithms: the same seed yields
// the same byte stream on every platform and every release.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1), 53 bits of randomness.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [lo, hi], both ends inclusive.
    /// Fixed-point multiply keeps the mapping platform-stable; the bias is
    /// below 2^-64 per unit of range and irrelevant at the ranges used here.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
        if (span == 0) return static_cast<std::int64_t>(next_u64()); // full 64-bit range
        const auto scaled = static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next_u64()) * span) >> 64);
        return lo + static_cast<std::int64_t>(scaled);
    }

    /// Normal deviate via Box-Muller; the spare deviate is cached, so draws
    /// come in deterministic pairs.
    double normal(double mean, double stddev) {
        if (have_spare_) {
            have_spare_ = false;
            return mean + stddev * spare_;
        }
        double u1 = uniform();
        double u2 = uniform();
        // Guard log(0); u1 == 0 happens once per 2^53 draws.
        while (u1 <= 0.0) u1 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * 3.14159265358979323846 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return mean + stddev * r * std::cos(a);
    }

    bool bernoulli(double p) { return uniform() < p; }

private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

/// Stable per-sample seed derivation: one splitmix64 output step evaluated
/// at master + (index+1) increments of the splitmix gamma. Dataset manifests
/// record per-sample seeds produced by this exact function, so it must never
/// change.
inline std::uint64_t mix_seed(std::uint64_t master_seed, std::uint64_t index) {
    std::uint64_t z = master_seed + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

} // namespace railgen
