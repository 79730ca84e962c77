#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "moments/accumulator.hpp"
#include "moments/rng.hpp"

namespace testutil {

inline bool close(double actual, double expected, double rel, double abs_floor = 0.0) {
    const double diff = std::abs(actual - expected);
    if (diff <= abs_floor) return true;
    return diff <= rel * std::abs(expected);
}

inline moments::MomentAccumulator accumulate(std::span<const double> data, int order) {
    moments::MomentAccumulator acc(order);
    for (double x : data) acc.update(x);
    return acc;
}

inline std::vector<double> uniform_stream(std::uint64_t seed, std::size_t n, double lo, double hi) {
    moments::SplitMix64 rng(seed);
    std::vector<double> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(lo + (hi - lo) * rng.next_double());
    return out;
}

inline std::vector<double> normal_stream(std::uint64_t seed, std::size_t n) {
    moments::GaussianStream g(seed);
    std::vector<double> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(g.next());
    return out;
}

}  // namespace testutil
