#pragma once

#include <span>
#include <vector>

#include "moments/accumulator.hpp"

namespace moments {

// Deterministic combination layout for chunked aggregation: chunk_count
// pieces combined by a strict left-to-right fold (floating-point addition is
// not associative, so the fold order is part of the contract).
struct MergePlan {
    std::size_t chunk_count = 1;
};

// Combine two accumulators into one equivalent to processing the
// concatenation of their input streams. The empty accumulator is a bitwise
// two-sided identity. The cross terms mirror the pairwise update: for each q
// the result gets both operands' sums, binomially weighted lower-order sums
// scaled by powers of the mean gap, and a closed-form tail.
inline MomentAccumulator merge(const MomentAccumulator& a, const MomentAccumulator& b) {
    if (a.order() != b.order()) {
        throw IncompatibleAccumulatorError("cannot merge accumulators of different orders");
    }
    if (b.count() == 0) return a;
    if (a.count() == 0) return b;

    const int p = a.order();
    const double na = static_cast<double>(a.count());
    const double nb = static_cast<double>(b.count());
    const double n = na + nb;
    const double delta = b.mean() - a.mean();
    const double mean = (na * a.mean() + nb * b.mean()) / n;

    const BinomialTable binom(p);
    std::vector<double> sums(static_cast<std::size_t>(p) - 1, 0.0);

    // Per-power bases: the a-side sums see (-nb/n * delta)^k, the b-side
    // (na/n * delta)^k; the tail is (na*nb*delta/n)^q (1/nb^(q-1) - (-1/na)^(q-1)).
    const double base_a = -nb / n * delta;
    const double base_b = na / n * delta;
    const double t = na * nb / n * delta;
    const double inv_b = 1.0 / nb;
    const double inv_a_neg = -1.0 / na;

    for (int q = 2; q <= p; ++q) {
        double sum = a.central_sum(q) + b.central_sum(q);
        double pow_a = base_a;
        double pow_b = base_b;
        for (int k = 1; k <= q - 2; ++k) {
            const double c = static_cast<double>(binom(q, k));
            sum += c * (pow_a * a.central_sum(q - k) + pow_b * b.central_sum(q - k));
            pow_a *= base_a;
            pow_b *= base_b;
        }
        double t_pow = t;
        double inv_b_pow = 1.0;
        double inv_a_pow = 1.0;
        for (int j = 1; j < q; ++j) {
            t_pow *= t;
            inv_b_pow *= inv_b;
            inv_a_pow *= inv_a_neg;
        }
        sum += t_pow * (inv_b_pow - inv_a_pow);
        sums[static_cast<std::size_t>(q) - 2] = sum;
    }

    return MomentAccumulator::from_parts(p, a.count() + b.count(), mean, std::move(sums));
}

// Strict left-to-right fold of merge() over a nonempty, order-uniform sequence.
inline MomentAccumulator merge_many(std::span<const MomentAccumulator> parts) {
    if (parts.empty()) throw std::invalid_argument("merge_many requires at least one accumulator");
    MomentAccumulator result = parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i) {
        result = merge(result, parts[i]);
    }
    return result;
}

inline MomentAccumulator merge_many(const std::vector<MomentAccumulator>& parts) {
    return merge_many(std::span<const MomentAccumulator>(parts));
}

}  // namespace moments
