#pragma once

#include <cstdint>
#include <vector>

#include "moments/errors.hpp"

namespace moments {

// Pascal-triangle table of C(q, k) for q <= max_order. All entries are exact
// 64-bit integers; max_order is capped at 32 to guarantee that.
class BinomialTable {
public:
    static constexpr int kMaxSupportedOrder = 32;

    explicit BinomialTable(int max_order) : max_order_(max_order) {
        if (max_order < 2 || max_order > kMaxSupportedOrder) {
            throw InvalidOrderError("binomial table order must be in [2, 32]");
        }
        rows_.resize(static_cast<std::size_t>(max_order) + 1);
        for (int q = 0; q <= max_order; ++q) {
            auto& row = rows_[static_cast<std::size_t>(q)];
            row.assign(static_cast<std::size_t>(q) + 1, 1);
            for (int k = 1; k < q; ++k) {
                const auto& prev = rows_[static_cast<std::size_t>(q) - 1];
                row[static_cast<std::size_t>(k)] =
                    prev[static_cast<std::size_t>(k) - 1] + prev[static_cast<std::size_t>(k)];
            }
        }
    }

    [[nodiscard]] int max_order() const { return max_order_; }

    [[nodiscard]] std::int64_t operator()(int q, int k) const {
        return rows_[static_cast<std::size_t>(q)][static_cast<std::size_t>(k)];
    }

private:
    int max_order_;
    std::vector<std::vector<std::int64_t>> rows_;
};

}  // namespace moments
