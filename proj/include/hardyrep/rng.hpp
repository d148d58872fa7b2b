#pragma once

#include <cmath>
#include <cstdint>

#include "hardyrep/complex.hpp"

namespace hardyrep {

// SplitMix64 (Steele, Lea & Flood). Bit-reproducible across platforms, which
// std:: distributions are not.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Independent stream derived from the next output.
    SplitMix64 split() { return SplitMix64(next() ^ 0x6A09E667F3BCC909ULL); }

    // Uniform in [0,1) with 53 random bits.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Uniform on the closed disc of the given radius.
    Complex disc(double radius) {
        const double r = radius * std::sqrt(uniform());
        const double t = kTwoPi * uniform();
        return {r * std::cos(t), r * std::sin(t)};
    }

private:
    std::uint64_t state_;
};

} // namespace hardyrep
