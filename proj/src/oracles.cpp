#include "moments/oracles.hpp"

#include <cmath>

#include "moments/binomial.hpp"

namespace moments {

CentralMoments twopass_central_moments(std::span<const double> data, int p) {
    if (data.empty()) throw std::invalid_argument("twopass oracle requires nonempty data");
    if (p < 2) throw InvalidOrderError("oracle order must be >= 2");

    CompensatedSum mean_sum;
    for (double x : data) mean_sum.add(x);
    const double mean = mean_sum.value() / static_cast<double>(data.size());

    CentralMoments out;
    out.mean = mean;
    out.central_sums.reserve(static_cast<std::size_t>(p) - 1);
    for (int q = 2; q <= p; ++q) {
        CompensatedSum s;
        for (double x : data) {
            const double d = x - mean;
            double dq = d;
            for (int i = 1; i < q; ++i) dq *= d;
            s.add(dq);
        }
        out.central_sums.push_back(s.value());
    }
    return out;
}

PowerSumAccumulator::PowerSumAccumulator(int order) : order_(order) {
    if (order < 2) throw InvalidOrderError("power-sum order must be >= 2");
    sums_.assign(static_cast<std::size_t>(order), 0.0);
}

void PowerSumAccumulator::update(double x) {
    ++count_;
    double xk = 1.0;
    for (int k = 1; k <= order_; ++k) {
        xk *= x;
        sums_[static_cast<std::size_t>(k) - 1] += xk;
    }
}

double PowerSumAccumulator::power_sum(int k) const {
    if (k < 1 || k > order_) throw InvalidOrderError("power sum index out of range");
    return sums_[static_cast<std::size_t>(k) - 1];
}

CentralMoments PowerSumAccumulator::central_moments() const {
    if (count_ == 0) throw std::invalid_argument("power-sum accumulator is empty");
    const double n = static_cast<double>(count_);
    const double mean = sums_[0] / n;
    const BinomialTable binom(order_);

    CentralMoments out;
    out.mean = mean;
    out.central_sums.reserve(static_cast<std::size_t>(order_) - 1);
    for (int q = 2; q <= order_; ++q) {
        double m = 0.0;
        double neg_mean_pow = 1.0;  // (-mean)^k
        for (int k = 0; k <= q; ++k) {
            const double s = (k == q) ? n : power_sum(q - k);
            m += static_cast<double>(binom(q, k)) * neg_mean_pow * s;
            neg_mean_pow *= -mean;
        }
        out.central_sums.push_back(m);
    }
    return out;
}

CentralMoments naive_central_moments(std::span<const double> data, int p) {
    if (data.empty()) throw std::invalid_argument("naive oracle requires nonempty data");
    PowerSumAccumulator acc(p);
    for (double x : data) acc.update(x);
    return acc.central_moments();
}

}  // namespace moments
