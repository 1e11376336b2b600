#pragma once

#include <cstdint>
#include <random>

namespace rhn {

// Seeded PRNG with project-owned distribution transforms. std::mt19937_64
// has a standard-fixed output sequence, and the transforms below avoid the
// implementation-defined std::*_distribution classes, so any stream drawn
// from a given seed is reproducible across compilers and platforms.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    // Uniform on [0, 1), 53-bit resolution.
    double unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    // Uniform on [lo, hi). Degenerate lo == hi returns lo.
    double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

    // Uniform on [-1, 1).
    double symmetric() { return uniform(-1.0, 1.0); }

    // Fair coin.
    bool flip() { return (eng_() >> 63) != 0; }

    // Unbiased integer in [0, n). Lemire multiply-shift with rejection.
    std::uint64_t below(std::uint64_t n) {
        unsigned __int128 m = static_cast<unsigned __int128>(eng_()) * n;
        auto lo = static_cast<std::uint64_t>(m);
        if (lo < n) {
            const std::uint64_t t = (0 - n) % n;
            while (lo < t) {
                m = static_cast<unsigned __int128>(eng_()) * n;
                lo = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    // Raw 64-bit word; used to derive seeds for subordinate streams.
    std::uint64_t word() { return eng_(); }

private:
    std::mt19937_64 eng_;
};

} // namespace rhn
