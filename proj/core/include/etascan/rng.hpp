// Copyright the etascan contributors. Licensed under the terms of the
// Apache 2.0 license. See LICENSE in the project root.
#ifndef ETASCAN_RNG_HPP
#define ETASCAN_RNG_HPP

#include <cmath>
#include <cstdint>

namespace etascan {

/// SplitMix64 (Steele, Lea & Flood 2014; public reference implementation by
/// Sebastiano Vigna). Fixture generation uses this generator, with the
/// derivations below, so that outputs are bit-reproducible across languages:
///   next():         state += 0x9E3779B97F4A7C15; then two xor-shift-multiply
///                   rounds (0xBF58476D1CE4E5B9, 0x94D049BB133111EB), final
///                   xor-shift by 31.
///   next_uniform(): (next() >> 11) * 2^-53, a double in [0, 1).
///   next_normal():  Box-Muller cosine branch; consumes exactly two uniforms,
///                   with u1 == 0 replaced by 2^-53.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    double next_uniform() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    double next_normal() {
        double u1 = next_uniform();
        const double u2 = next_uniform();
        if (u1 == 0.0) u1 = 0x1.0p-53;
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
    }

private:
    std::uint64_t state_;
};

/// Deterministic sub-stream seed: mixes (base, a, b) through SplitMix64 output
/// rounds. Stable across platforms.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b = 0) {
    SplitMix64 g(base ^ (a * 0xA24BAED4963EE407ULL) ^ (b * 0x9FB21C651E98DF25ULL));
    g.next();
    return g.next();
}

}  // namespace etascan

#endif  // ETASCAN_RNG_HPP
