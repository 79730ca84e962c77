#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "moments/accumulator.hpp"
#include "moments/binomial.hpp"
#include "moments/op_counter.hpp"
#include "test_util.hpp"

using moments::BinomialTable;
using moments::Counted;
using moments::InstrumentedMomentAccumulator;
using moments::OpCounter;

namespace {

// Per-update operation cost of a path, measured in steady state (the op
// sequence is identical for every update).
OpCounter cost_of_update(int order, bool unrolled) {
    InstrumentedMomentAccumulator acc(order);
    acc.update(Counted(0.5));
    acc.update(Counted(1.5));
    Counted::counter.reset();
    if (unrolled) {
        acc.update_order4(Counted(2.5));
    } else {
        acc.update(Counted(2.5));
    }
    return Counted::counter;
}

}  // namespace

TEST_CASE("binomial table is exact and Pascal-consistent") {
    const BinomialTable t(32);
    CHECK(t(4, 2) == 6);
    CHECK(t(4, 1) == 4);
    CHECK(t(3, 1) == 3);
    CHECK(t(32, 16) == 601080390);
    for (int q = 2; q <= 32; ++q) {
        CHECK(t(q, 0) == 1);
        CHECK(t(q, q) == 1);
        for (int k = 1; k < q; ++k) {
            CHECK(t(q, k) == t(q - 1, k - 1) + t(q - 1, k));
        }
    }
    CHECK_THROWS_AS(BinomialTable(33), moments::InvalidOrderError);
    CHECK_THROWS_AS(BinomialTable(1), moments::InvalidOrderError);
}

TEST_CASE("unrolled order-4 update: one division, at most 26 FLOPs") {
    const auto ops = cost_of_update(4, true);
    CHECK(ops.divs == 1);
    CHECK(ops.total() <= 26);
}

TEST_CASE("generic order-4 update: one division, at most 26 FLOPs") {
    const auto ops = cost_of_update(4, false);
    CHECK(ops.divs == 1);
    CHECK(ops.total() <= 26);
}

TEST_CASE("order-2 update is strictly cheaper than order-4") {
    const auto ops2 = cost_of_update(2, false);
    const auto ops4 = cost_of_update(4, false);
    CHECK(ops2.divs == 1);
    CHECK(ops2.total() < ops4.total());
    CHECK(ops2.total() <= 26);
}

TEST_CASE("every update of a fixed order costs the same") {
    InstrumentedMomentAccumulator acc(6);
    acc.update(Counted(1.0));
    Counted::counter.reset();
    acc.update(Counted(2.0));
    const auto first = Counted::counter;
    Counted::counter.reset();
    acc.update(Counted(-3.0));
    const auto second = Counted::counter;
    CHECK(first.total() == second.total());
    CHECK(first.divs == second.divs);
}

TEST_CASE("instrumented arithmetic matches plain doubles bitwise") {
    const auto data = testutil::uniform_stream(401, 200, -5.0, 5.0);
    moments::MomentAccumulator plain(4);
    InstrumentedMomentAccumulator counted(4);
    for (double x : data) {
        plain.update(x);
        counted.update(Counted(x));
    }
    CHECK(plain.mean() == counted.mean().value());
    for (int q = 2; q <= 4; ++q) {
        CHECK(plain.central_sum(q) == counted.central_sum(q).value());
    }
}
