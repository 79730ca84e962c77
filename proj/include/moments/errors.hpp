#pragma once

#include <stdexcept>
#include <string>

namespace moments {

// Order outside the supported range, or a query above the tracked order.
struct InvalidOrderError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Statistic requested on an accumulator with count == 0.
struct EmptyAccumulatorError : std::logic_error {
    using std::logic_error::logic_error;
};

// Statistic mathematically undefined for the absorbed data (e.g. M2 == 0).
struct UndefinedStatisticError : std::domain_error {
    using std::domain_error::domain_error;
};

// Non-finite input value.
struct InputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Merge of accumulators with mismatched orders.
struct IncompatibleAccumulatorError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Accumulator state became non-finite (dynamic-range overflow).
struct SaturationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad token or I/O failure while reading input.
struct ParseError : std::runtime_error {
    ParseError(std::string msg, std::size_t line, std::string token)
        : std::runtime_error(std::move(msg)), line_number(line), token(std::move(token)) {}
    std::size_t line_number;
    std::string token;
};

}  // namespace moments
