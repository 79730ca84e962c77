#pragma once

#include <istream>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "moments/errors.hpp"

namespace moments {

enum class InputFormat { plain, csv };
enum class BadTokenPolicy { error, skip_with_count };

struct ParseConfig {
    InputFormat format = InputFormat::plain;
    std::optional<int> column;  // required for csv, 0-based
    char delimiter = ',';
    BadTokenPolicy on_bad_token = BadTokenPolicy::error;
};

struct ParseResult {
    std::vector<double> values;
    std::size_t bad_tokens = 0;
};

// Read finite doubles from the source in input order. Plain format splits on
// whitespace; csv extracts the configured column per row and skips a header
// row when the first row's target cell is non-numeric. NaN/infinity literals
// count as bad tokens. With on_bad_token = error a ParseError carries the
// 1-based line number and offending token.
ParseResult parse_stream(std::istream& source, const ParseConfig& config);

struct ChunkPlan {
    std::size_t chunk_size = 0;  // values per chunk; last chunk may be short
};

// Split by value index; concatenating the output reproduces the input exactly.
std::vector<std::vector<double>> chunk(std::span<const double> values, const ChunkPlan& plan);

}  // namespace moments
