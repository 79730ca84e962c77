#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "moments/binomial.hpp"
#include "moments/errors.hpp"
#include "moments/op_counter.hpp"

namespace moments {

// Derived statistics bundle. Fields whose preconditions fail (n too small,
// zero variance) are absent rather than NaN.
struct MomentSummary {
    std::uint64_t count = 0;
    double mean = 0.0;
    double variance = 0.0;  // population, M2 / n
    std::optional<double> sample_variance;
    std::optional<double> skewness;
    std::optional<double> kurtosis;
    std::optional<double> excess_kurtosis;
    std::vector<double> central_moments;  // M_q / n for q = 2..order
};

// One-pass accumulator of central power sums M_q = sum_i (x_i - mean)^q up to
// a fixed order p. Updates touch lower-order sums first and read the already
// updated values, so each new value costs one division regardless of p.
//
// Real is double in release paths; Counted instruments the same arithmetic.
template <class Real>
class BasicMomentAccumulator {
public:
    explicit BasicMomentAccumulator(int order)
        : order_(order), binom_((order >= 2 && order <= BinomialTable::kMaxSupportedOrder)
                                    ? order
                                    : throw InvalidOrderError("accumulator order must be in [2, 32]")) {
        sums_.assign(static_cast<std::size_t>(order_) - 1, Real(0.0));
    }

    // Rebuild from serialized state (order, count, mean, M_2..M_p).
    static BasicMomentAccumulator from_parts(int order, std::uint64_t count, Real mean,
                                             std::vector<Real> central_sums) {
        BasicMomentAccumulator acc(order);
        if (central_sums.size() != static_cast<std::size_t>(order) - 1) {
            throw InvalidOrderError("central sum vector does not match order");
        }
        acc.count_ = count;
        acc.mean_ = mean;
        acc.sums_ = std::move(central_sums);
        acc.refresh_finiteness();
        return acc;
    }

    [[nodiscard]] int order() const { return order_; }
    [[nodiscard]] std::uint64_t count() const { return count_; }
    [[nodiscard]] Real mean() const { return mean_; }
    [[nodiscard]] bool saturated() const { return saturated_; }

    // Raw central power sum M_q, q in [2, order].
    [[nodiscard]] Real central_sum(int q) const {
        if (q < 2 || q > order_) throw InvalidOrderError("central sum order out of range");
        return sums_[static_cast<std::size_t>(q) - 2];
    }

    // Absorb one value. Generic order-p path: sums are updated in place in
    // ascending order, each reading the already-updated lower sums, with a
    // trailing delta * (delta^(q-1) - (delta/n)^(q-1)) term. Powers of delta
    // and delta/n are built by incremental multiplication.
    void update(Real x) {
        if (!is_finite(x)) throw InputError("non-finite input value");
        const Real delta = x - mean_;
        ++count_;
        const Real delta_n = delta / Real(static_cast<double>(count_));
        mean_ += delta_n;
        auto m = [this](int q) -> Real& { return sums_[static_cast<std::size_t>(q) - 2]; };
        m(2) += delta * (delta - delta_n);
        Real delta_pow = delta;      // delta^(q-1) once inside the loop
        Real delta_n_pow = delta_n;  // (delta/n)^(q-1)
        for (int q = 3; q <= order_; ++q) {
            delta_pow = delta_pow * delta;
            delta_n_pow = delta_n_pow * delta_n;
            Real dn_k = delta_n;  // (delta/n)^k
            Real acc = (Real(-static_cast<double>(binom_(q, 1))) * dn_k) * m(q - 1);
            for (int k = 2; k <= q - 2; ++k) {
                dn_k = dn_k * delta_n;
                acc = acc - (Real(static_cast<double>(binom_(q, k))) * dn_k) * m(q - k);
            }
            acc = acc + delta * (delta_pow - delta_n_pow);
            m(q) += acc;
        }
        check_finite_after_update();
    }

    // Unrolled p = 4 fast path: one division, 25 floating-point operations.
    // Performs the identical arithmetic sequence as update(), so the two
    // paths agree bitwise.
    void update_order4(Real x) {
        if (order_ != 4) throw InvalidOrderError("update_order4 requires order 4");
        if (!is_finite(x)) throw InputError("non-finite input value");
        Real& m2 = sums_[0];
        Real& m3 = sums_[1];
        Real& m4 = sums_[2];
        const Real delta = x - mean_;
        ++count_;
        const Real delta_n = delta / Real(static_cast<double>(count_));
        mean_ += delta_n;
        m2 += delta * (delta - delta_n);
        const Real delta_2 = delta * delta;
        const Real delta_n_2 = delta_n * delta_n;
        m3 += Real(-3.0) * delta_n * m2 + delta * (delta_2 - delta_n_2);
        m4 += Real(-4.0) * delta_n * m3 - Real(6.0) * delta_n_2 * m2
              + delta * (delta * delta_2 - delta_n * delta_n_2);
        check_finite_after_update();
    }

    // M_q / n.
    [[nodiscard]] double central_moment(int q) const {
        require_data();
        return to_double(central_sum(q)) / static_cast<double>(count_);
    }

    [[nodiscard]] double variance() const {
        require_data();
        return to_double(sums_[0]) / static_cast<double>(count_);
    }

    [[nodiscard]] double sample_variance() const {
        require_data();
        if (count_ < 2) throw UndefinedStatisticError("sample variance requires n >= 2");
        return to_double(sums_[0]) / static_cast<double>(count_ - 1);
    }

    // n^(1/2) M_3 / M_2^(3/2)
    [[nodiscard]] double skewness() const {
        require_data();
        if (order_ < 3) throw InvalidOrderError("skewness requires order >= 3");
        const double m2 = to_double(sums_[0]);
        if (m2 <= 0.0) throw UndefinedStatisticError("skewness undefined: zero variance");
        const double n = static_cast<double>(count_);
        return std::sqrt(n) * to_double(sums_[1]) / (m2 * std::sqrt(m2));
    }

    // n M_4 / M_2^2
    [[nodiscard]] double kurtosis() const {
        require_data();
        if (order_ < 4) throw InvalidOrderError("kurtosis requires order >= 4");
        const double m2 = to_double(sums_[0]);
        if (m2 <= 0.0) throw UndefinedStatisticError("kurtosis undefined: zero variance");
        const double n = static_cast<double>(count_);
        return n * to_double(sums_[2]) / (m2 * m2);
    }

    [[nodiscard]] MomentSummary summarize() const {
        require_data();
        MomentSummary s;
        s.count = count_;
        s.mean = to_double(mean_);
        s.variance = variance();
        if (count_ >= 2) s.sample_variance = sample_variance();
        const double m2 = to_double(sums_[0]);
        if (order_ >= 3 && count_ >= 2 && m2 > 0.0) s.skewness = skewness();
        if (order_ >= 4 && count_ >= 2 && m2 > 0.0) {
            s.kurtosis = kurtosis();
            s.excess_kurtosis = *s.kurtosis - 3.0;
        }
        s.central_moments.reserve(static_cast<std::size_t>(order_) - 1);
        for (int q = 2; q <= order_; ++q) s.central_moments.push_back(central_moment(q));
        return s;
    }

private:
    void require_data() const {
        if (count_ == 0) throw EmptyAccumulatorError("no data absorbed");
        if (saturated_) throw SaturationError("accumulator state overflowed to non-finite");
    }

    void check_finite_after_update() {
        if (!is_finite(mean_)) { saturated_ = true; return; }
        for (const Real& v : sums_) {
            if (!is_finite(v)) { saturated_ = true; return; }
        }
    }

    void refresh_finiteness() {
        saturated_ = false;
        check_finite_after_update();
    }

    int order_;
    std::uint64_t count_ = 0;
    Real mean_ = Real(0.0);
    std::vector<Real> sums_;  // sums_[q - 2] holds M_q
    BinomialTable binom_;
    bool saturated_ = false;
};

using MomentAccumulator = BasicMomentAccumulator<double>;
using InstrumentedMomentAccumulator = BasicMomentAccumulator<Counted>;

}  // namespace moments
