#pragma once

#include <cmath>
#include <cstdint>

namespace moments {

// Tally of floating-point arithmetic. Each add/sub/mul/div counts as one;
// comparisons, copies, and conversions are free.
struct OpCounter {
    std::uint64_t adds = 0;
    std::uint64_t subs = 0;
    std::uint64_t muls = 0;
    std::uint64_t divs = 0;

    [[nodiscard]] std::uint64_t total() const { return adds + subs + muls + divs; }
    void reset() { *this = OpCounter{}; }

    OpCounter operator-(const OpCounter& o) const {
        return {adds - o.adds, subs - o.subs, muls - o.muls, divs - o.divs};
    }
};

// Drop-in double replacement that tallies arithmetic into a thread-local
// counter. Used to instrument the update paths in tests and `bench --instrument`.
class Counted {
public:
    static inline thread_local OpCounter counter{};

    Counted() = default;
    Counted(double v) : v_(v) {}  // NOLINT: implicit by design of the wrapper

    [[nodiscard]] double value() const { return v_; }

    friend Counted operator+(Counted a, Counted b) { ++counter.adds; return {a.v_ + b.v_}; }
    friend Counted operator-(Counted a, Counted b) { ++counter.subs; return {a.v_ - b.v_}; }
    friend Counted operator*(Counted a, Counted b) { ++counter.muls; return {a.v_ * b.v_}; }
    friend Counted operator/(Counted a, Counted b) { ++counter.divs; return {a.v_ / b.v_}; }
    friend Counted operator-(Counted a) { ++counter.subs; return {-a.v_}; }

    Counted& operator+=(Counted o) { *this = *this + o; return *this; }
    Counted& operator-=(Counted o) { *this = *this - o; return *this; }
    Counted& operator*=(Counted o) { *this = *this * o; return *this; }
    Counted& operator/=(Counted o) { *this = *this / o; return *this; }

    friend bool operator==(Counted a, Counted b) { return a.v_ == b.v_; }

private:
    double v_ = 0.0;
};

inline bool is_finite(double v) { return std::isfinite(v); }
inline bool is_finite(Counted v) { return std::isfinite(v.value()); }

inline double to_double(double v) { return v; }
inline double to_double(Counted v) { return v.value(); }

}  // namespace moments
