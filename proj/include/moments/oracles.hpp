#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "moments/errors.hpp"

namespace moments {

// Neumaier-compensated summation: tracks a running rounding-error correction
// so the final sum behaves like a higher-precision accumulation.
class CompensatedSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }

    [[nodiscard]] double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

struct CentralMoments {
    double mean = 0.0;
    std::vector<double> central_sums;  // M_2..M_p (raw sums, not divided by n)
};

// Ground-truth two-pass evaluation of the defining sums: compensated mean,
// then compensated sum of (x - mean)^q per order. Holds data in memory.
CentralMoments twopass_central_moments(std::span<const double> data, int p);

// Deliberately naive one-pass accumulator of raw power sums S_k = sum x_i^k,
// no compensation. Converting S_k to central moments subtracts nearly equal
// large quantities and loses digits on ill-conditioned data; this type exists
// to exhibit that failure and must not be stabilized.
class PowerSumAccumulator {
public:
    explicit PowerSumAccumulator(int order);

    void update(double x);

    [[nodiscard]] int order() const { return order_; }
    [[nodiscard]] std::uint64_t count() const { return count_; }
    [[nodiscard]] double power_sum(int k) const;  // S_k, 1 <= k <= order

    // M_q = sum_k C(q,k) (-mean)^k S_(q-k), with S_0 = n.
    [[nodiscard]] CentralMoments central_moments() const;

private:
    int order_;
    std::uint64_t count_ = 0;
    std::vector<double> sums_;  // sums_[k - 1] holds S_k
};

// One-shot naive evaluation over an in-memory sequence.
CentralMoments naive_central_moments(std::span<const double> data, int p);

}  // namespace moments
