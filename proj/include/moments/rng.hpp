#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace moments {

// SplitMix64: 64-bit PRNG with a one-word state and a splittable seeding
// discipline (distinct streams from seed ^ stream-id). Chosen for bit-exact
// reproducibility across platforms.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1), 53-bit resolution.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

private:
    std::uint64_t state_;
};

// Standard-normal stream via Box-Muller on SplitMix64 uniforms. Deterministic
// given the seed; no dependence on library distribution internals.
class GaussianStream {
public:
    explicit GaussianStream(std::uint64_t seed) : rng_(seed) {}

    double next() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = rng_.next_double();
        const double u2 = rng_.next_double();
        if (u1 <= 0.0) u1 = 0x1.0p-53;  // avoid log(0)
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(theta);
        has_spare_ = true;
        return r * std::cos(theta);
    }

private:
    SplitMix64 rng_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace moments
