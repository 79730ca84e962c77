// momcli: streaming summary statistics over numeric input.
//
// Subcommands:
//   stats     one accumulator over the whole stream
//   parallel  chunked accumulation with a deterministic merge fold
//   compare   stable vs naive power-sum accumulation on ill-conditioned data
//   bench     throughput and (instrumented) per-update operation counts

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "moments/accumulator.hpp"
#include "moments/merge.hpp"
#include "moments/oracles.hpp"
#include "moments/rng.hpp"
#include "moments/stream_io.hpp"

namespace {

using json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitDataError = 1;
constexpr int kExitUsage = 2;

struct InputFlags {
    std::string path = "-";
    bool csv = false;
    int column = 0;
    bool column_set = false;
    std::string delimiter = ",";
    bool skip_bad = false;
};

void add_input_flags(CLI::App& cmd, InputFlags& f) {
    cmd.add_option("input", f.path, "input file path, or - for stdin");
    cmd.add_flag("--csv", f.csv, "parse input as csv");
    cmd.add_option("--column", f.column, "0-based csv column")->check(CLI::NonNegativeNumber);
    cmd.add_option("--delimiter", f.delimiter, "csv delimiter (single character)");
    cmd.add_flag("--skip-bad", f.skip_bad, "skip unparseable tokens instead of failing");
}

moments::ParseResult read_values(const InputFlags& f) {
    moments::ParseConfig config;
    config.format = f.csv ? moments::InputFormat::csv : moments::InputFormat::plain;
    if (f.csv) config.column = f.column;
    if (f.delimiter.size() != 1) throw CLI::ValidationError("--delimiter must be one character");
    config.delimiter = f.delimiter[0];
    config.on_bad_token =
        f.skip_bad ? moments::BadTokenPolicy::skip_with_count : moments::BadTokenPolicy::error;

    if (f.path == "-") return moments::parse_stream(std::cin, config);
    std::ifstream in(f.path);
    if (!in) throw std::runtime_error("cannot open input file: " + f.path);
    return moments::parse_stream(in, config);
}

struct OutputReport {
    moments::MomentSummary summary;
    std::string input_name;
    std::size_t bad_tokens = 0;
    double elapsed_ms = 0.0;
};

json to_json(const OutputReport& r) {
    auto opt = [](const std::optional<double>& v) {
        return v ? json(*v) : json(nullptr);
    };
    json j;
    j["n"] = r.summary.count;
    j["mean"] = r.summary.mean;
    j["variance"] = r.summary.variance;
    j["sample_variance"] = opt(r.summary.sample_variance);
    j["skewness"] = opt(r.summary.skewness);
    j["kurtosis"] = opt(r.summary.kurtosis);
    j["excess_kurtosis"] = opt(r.summary.excess_kurtosis);
    j["central_moments"] = r.summary.central_moments;
    j["bad_tokens"] = r.bad_tokens;
    j["elapsed_ms"] = r.elapsed_ms;
    return j;
}

void print_table(const OutputReport& r) {
    auto row = [](const char* name, const std::optional<double>& v) {
        if (v) {
            std::printf("%-16s %.6g\n", name, *v);
        } else {
            std::printf("%-16s n/a\n", name);
        }
    };
    std::printf("%-16s %s\n", "input", r.input_name.c_str());
    std::printf("%-16s %llu\n", "n", static_cast<unsigned long long>(r.summary.count));
    row("mean", r.summary.mean);
    row("variance", r.summary.variance);
    row("sample_variance", r.summary.sample_variance);
    row("skewness", r.summary.skewness);
    row("kurtosis", r.summary.kurtosis);
    row("excess_kurtosis", r.summary.excess_kurtosis);
    for (std::size_t i = 0; i < r.summary.central_moments.size(); ++i) {
        char name[32];
        std::snprintf(name, sizeof(name), "m%zu", i + 2);
        row(name, r.summary.central_moments[i]);
    }
    std::printf("%-16s %zu\n", "bad_tokens", r.bad_tokens);
    std::printf("%-16s %.3f\n", "elapsed_ms", r.elapsed_ms);
}

void emit_report(const OutputReport& r, const std::string& format) {
    if (format == "json") {
        std::cout << to_json(r).dump() << "\n";
    } else {
        print_table(r);
    }
}

moments::MomentAccumulator accumulate(std::span<const double> values, int order) {
    moments::MomentAccumulator acc(order);
    if (order == 4) {
        for (double x : values) acc.update_order4(x);
    } else {
        for (double x : values) acc.update(x);
    }
    return acc;
}

int run_stats(const InputFlags& input, int order, const std::string& format) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto parsed = read_values(input);
    if (parsed.values.empty()) {
        std::cerr << "error: no data\n";
        return kExitDataError;
    }
    const auto acc = accumulate(parsed.values, order);
    OutputReport report;
    report.summary = acc.summarize();
    report.input_name = input.path;
    report.bad_tokens = parsed.bad_tokens;
    report.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    emit_report(report, format);
    return kExitOk;
}

int run_parallel(const InputFlags& input, int order, const std::string& format,
                 std::size_t chunks, std::size_t chunk_size) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto parsed = read_values(input);
    if (parsed.values.empty()) {
        std::cerr << "error: no data\n";
        return kExitDataError;
    }

    if (chunk_size == 0) {
        chunk_size = (parsed.values.size() + chunks - 1) / chunks;
    }
    const auto pieces = moments::chunk(parsed.values, moments::ChunkPlan{chunk_size});

    std::vector<moments::MomentAccumulator> parts(pieces.size(), moments::MomentAccumulator(order));
    std::vector<std::thread> workers;
    workers.reserve(pieces.size());
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        workers.emplace_back([&, i] { parts[i] = accumulate(pieces[i], order); });
    }
    for (auto& w : workers) w.join();

    const auto acc = moments::merge_many(parts);
    OutputReport report;
    report.summary = acc.summarize();
    report.input_name = input.path;
    report.bad_tokens = parsed.bad_tokens;
    report.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    emit_report(report, format);
    return kExitOk;
}

int run_compare(std::size_t n, double mean_offset, double stddev, std::uint64_t seed, int order) {
    std::vector<double> data;
    data.reserve(n);
    moments::GaussianStream gauss(seed);
    for (std::size_t i = 0; i < n; ++i) data.push_back(mean_offset + stddev * gauss.next());

    const auto oracle = moments::twopass_central_moments(data, order);
    const auto naive = moments::naive_central_moments(data, order);
    const auto stable = accumulate(data, order);

    const double nn = static_cast<double>(n);
    std::printf("n=%zu mean_offset=%.17g stddev=%.17g seed=%llu order=%d\n", n, mean_offset,
                stddev, static_cast<unsigned long long>(seed), order);
    std::printf("%-8s %-24s %-24s %-24s %-12s %-12s %-12s %-12s\n", "moment", "oracle", "stable",
                "naive", "stable_abs", "stable_rel", "naive_abs", "naive_rel");
    for (int q = 2; q <= order; ++q) {
        const double ref = oracle.central_sums[static_cast<std::size_t>(q) - 2] / nn;
        const double st = stable.central_sum(q) / nn;
        const double nv = naive.central_sums[static_cast<std::size_t>(q) - 2] / nn;
        const double denom = std::abs(ref) > 0.0 ? std::abs(ref) : 1.0;
        std::printf("m%-7d %-24.17g %-24.17g %-24.17g %-12.5g %-12.5g %-12.5g %-12.5g\n", q, ref,
                    st, nv, std::abs(st - ref), std::abs(st - ref) / denom, std::abs(nv - ref),
                    std::abs(nv - ref) / denom);
    }
    return kExitOk;
}

int run_bench(std::size_t n, int order, bool instrument) {
    std::vector<double> data;
    data.reserve(n);
    moments::SplitMix64 rng(42);
    for (std::size_t i = 0; i < n; ++i) data.push_back(rng.next_double());

    auto time_path = [&](const char* name, auto&& push) {
        moments::MomentAccumulator acc(order);
        const auto t0 = std::chrono::steady_clock::now();
        for (double x : data) push(acc, x);
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("%-10s n=%zu  %.3g values/s  (mean %.6g variance %.6g)\n", name, n,
                    static_cast<double>(n) / secs, acc.mean(), acc.variance());
    };

    time_path("generic", [](auto& acc, double x) { acc.update(x); });
    if (order == 4) {
        time_path("order4", [](auto& acc, double x) { acc.update_order4(x); });
    }

    if (instrument) {
        auto count_path = [&](const char* name, auto&& push) {
            moments::InstrumentedMomentAccumulator acc(order);
            const std::size_t reps = std::min<std::size_t>(n, 10000);
            moments::Counted::counter.reset();
            for (std::size_t i = 0; i < reps; ++i) push(acc, data[i]);
            const auto ops = moments::Counted::counter;
            const double r = static_cast<double>(reps);
            std::printf("%-10s per-update: flops=%.6g divisions=%.6g (adds=%.6g subs=%.6g muls=%.6g)\n",
                        name, static_cast<double>(ops.total()) / r,
                        static_cast<double>(ops.divs) / r, static_cast<double>(ops.adds) / r,
                        static_cast<double>(ops.subs) / r, static_cast<double>(ops.muls) / r);
        };
        count_path("generic", [](auto& acc, moments::Counted x) { acc.update(x); });
        if (order == 4) {
            count_path("order4", [](auto& acc, moments::Counted x) { acc.update_order4(x); });
        }
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"streaming central-moment statistics"};
    app.require_subcommand(1);

    int order = 4;
    std::string format = "table";
    InputFlags input;

    auto* stats = app.add_subcommand("stats", "summary statistics over one stream");
    stats->add_option("--order", order, "highest tracked moment order")->check(CLI::Range(2, 32));
    stats->add_option("--format", format)->check(CLI::IsMember({"table", "json"}));
    add_input_flags(*stats, input);

    std::size_t chunks = std::max(1u, std::thread::hardware_concurrency());
    std::size_t chunk_size = 0;
    auto* parallel = app.add_subcommand("parallel", "chunked accumulation plus merge");
    parallel->add_option("--order", order)->check(CLI::Range(2, 32));
    parallel->add_option("--format", format)->check(CLI::IsMember({"table", "json"}));
    parallel->add_option("--chunks", chunks, "number of chunks")->check(CLI::PositiveNumber);
    parallel->add_option("--chunk-size", chunk_size, "values per chunk")
        ->check(CLI::PositiveNumber);
    add_input_flags(*parallel, input);

    std::size_t compare_n = 1000000;
    double mean_offset = 1e9;
    double stddev = 1.0;
    std::uint64_t seed = 20240817;
    auto* compare = app.add_subcommand("compare", "stable vs naive on ill-conditioned data");
    compare->add_option("--n", compare_n)->check(CLI::PositiveNumber);
    compare->add_option("--mean-offset", mean_offset);
    compare->add_option("--stddev", stddev)->check(CLI::NonNegativeNumber);
    compare->add_option("--seed", seed);
    compare->add_option("--order", order)->check(CLI::Range(2, 32));

    std::size_t bench_n = 10000000;
    bool instrument = false;
    auto* bench = app.add_subcommand("bench", "update throughput and FLOP counts");
    bench->add_option("--n", bench_n)->check(CLI::PositiveNumber);
    bench->add_option("--order", order)->check(CLI::Range(2, 32));
    bench->add_flag("--instrument", instrument, "count arithmetic operations per update");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (stats->parsed()) return run_stats(input, order, format);
        if (parallel->parsed()) return run_parallel(input, order, format, chunks, chunk_size);
        if (compare->parsed()) return run_compare(compare_n, mean_offset, stddev, seed, order);
        return run_bench(bench_n, order, instrument);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDataError;
    }
}
