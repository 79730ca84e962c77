#include "moments/stream_io.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>

namespace moments {

namespace {

// Strict finite-double parse: whole token must be consumed.
std::optional<double> parse_token(const std::string& token) {
    if (token.empty()) return std::nullopt;
    const char* begin = token.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end != begin + token.size()) return std::nullopt;
    if (!std::isfinite(v)) return std::nullopt;
    return v;
}

void handle_bad(const ParseConfig& config, ParseResult& result, std::size_t line,
                const std::string& token) {
    if (config.on_bad_token == BadTokenPolicy::error) {
        throw ParseError("unparseable token '" + token + "' at line " + std::to_string(line),
                         line, token);
    }
    ++result.bad_tokens;
}

std::vector<std::string> split(const std::string& line, char delimiter) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, delimiter)) cells.push_back(cell);
    if (!line.empty() && line.back() == delimiter) cells.emplace_back();
    return cells;
}

}  // namespace

ParseResult parse_stream(std::istream& source, const ParseConfig& config) {
    if ((config.format == InputFormat::csv) != config.column.has_value()) {
        throw std::invalid_argument("column selection is required for csv and invalid for plain");
    }

    ParseResult result;
    std::string line;
    std::size_t line_number = 0;
    bool first_row = true;

    while (std::getline(source, line)) {
        ++line_number;
        if (!line.empty() && line.back() == '\r') line.pop_back();

        if (config.format == InputFormat::plain) {
            std::istringstream ss(line);
            std::string token;
            while (ss >> token) {
                if (auto v = parse_token(token)) {
                    result.values.push_back(*v);
                } else {
                    handle_bad(config, result, line_number, token);
                }
            }
        } else {
            if (line.empty()) continue;
            const auto cells = split(line, config.delimiter);
            const auto col = static_cast<std::size_t>(*config.column);
            if (col >= cells.size()) {
                if (first_row) { first_row = false; continue; }  // short header row
                handle_bad(config, result, line_number, "<missing column>");
                continue;
            }
            const auto v = parse_token(cells[col]);
            if (first_row) {
                first_row = false;
                if (!v) continue;  // header row
            }
            if (v) {
                result.values.push_back(*v);
            } else {
                handle_bad(config, result, line_number, cells[col]);
            }
        }
        if (config.format == InputFormat::plain) first_row = false;
    }

    if (source.bad()) throw std::runtime_error("read failure on input stream");
    return result;
}

std::vector<std::vector<double>> chunk(std::span<const double> values, const ChunkPlan& plan) {
    if (plan.chunk_size == 0) throw std::invalid_argument("chunk size must be positive");
    std::vector<std::vector<double>> chunks;
    chunks.reserve((values.size() + plan.chunk_size - 1) / plan.chunk_size);
    for (std::size_t i = 0; i < values.size(); i += plan.chunk_size) {
        const std::size_t len = std::min(plan.chunk_size, values.size() - i);
        chunks.emplace_back(values.begin() + static_cast<std::ptrdiff_t>(i),
                            values.begin() + static_cast<std::ptrdiff_t>(i + len));
    }
    return chunks;
}

}  // namespace moments
