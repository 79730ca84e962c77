#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "subprocess.hpp"

using json = nlohmann::json;
using testutil::run;

namespace {

const std::string cli = MOMCLI_PATH;

struct TempFile {
    explicit TempFile(const std::string& content) {
        path = std::string("/tmp/momcli_test_") + std::to_string(counter++) + ".txt";
        std::ofstream out(path);
        out << content;
    }
    ~TempFile() { std::remove(path.c_str()); }
    std::string path;
    static inline int counter = 0;
};

}  // namespace

TEST_CASE("stats table over hand-checked data") {
    TempFile f("1 2 3 4 5\n");
    const auto r = run(cli + " stats --order 4 " + f.path);
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("mean") != std::string::npos);
    CHECK(r.output.find("3") != std::string::npos);
    CHECK(r.output.find("1.7") != std::string::npos);
}

TEST_CASE("stats json has the fixed schema with nulls for absent statistics") {
    TempFile f("7 7 7\n");
    const auto r = run(cli + " stats --format json " + f.path);
    REQUIRE(r.exit_code == 0);
    const auto j = json::parse(r.output);
    const std::vector<std::string> keys{"n",        "mean",           "variance",
                                        "sample_variance", "skewness", "kurtosis",
                                        "excess_kurtosis", "central_moments", "bad_tokens",
                                        "elapsed_ms"};
    for (const auto& k : keys) CHECK(j.contains(k));
    CHECK(j.size() == keys.size());
    CHECK(j["n"] == 3);
    CHECK(j["variance"] == 0.0);
    CHECK(j["skewness"].is_null());
    CHECK(j["kurtosis"].is_null());
}

TEST_CASE("stats json values match the hand-checked stream") {
    TempFile f("1 2 3 4 5\n");
    const auto r = run(cli + " stats --format json " + f.path);
    REQUIRE(r.exit_code == 0);
    const auto j = json::parse(r.output);
    CHECK(j["mean"].get<double>() == doctest::Approx(3.0));
    CHECK(j["variance"].get<double>() == doctest::Approx(2.0));
    CHECK(j["sample_variance"].get<double>() == doctest::Approx(2.5));
    CHECK(j["kurtosis"].get<double>() == doctest::Approx(1.7));
}

TEST_CASE("empty input exits 1") {
    TempFile f("");
    const auto r = run(cli + " stats " + f.path + " 2>/dev/null");
    CHECK(r.exit_code == 1);
}

TEST_CASE("bad token exits 1 unless skipped") {
    TempFile f("1 foo 3\n");
    CHECK(run(cli + " stats " + f.path + " 2>/dev/null").exit_code == 1);
    const auto r = run(cli + " stats --format json --skip-bad " + f.path);
    REQUIRE(r.exit_code == 0);
    const auto j = json::parse(r.output);
    CHECK(j["n"] == 2);
    CHECK(j["bad_tokens"] == 1);
}

TEST_CASE("csv column selection via flags") {
    TempFile f("time,value\n0,10\n1,20\n2,30\n");
    const auto r = run(cli + " stats --format json --csv --column 1 " + f.path);
    REQUIRE(r.exit_code == 0);
    const auto j = json::parse(r.output);
    CHECK(j["n"] == 3);
    CHECK(j["mean"].get<double>() == doctest::Approx(20.0));
}

TEST_CASE("usage errors exit 2") {
    CHECK(run(cli + " stats --order 1 /dev/null 2>/dev/null").exit_code == 2);
    CHECK(run(cli + " parallel --chunks 0 /dev/null 2>/dev/null").exit_code == 2);
    CHECK(run(cli + " compare --n 0 2>/dev/null").exit_code == 2);
    CHECK(run(cli + " nosuchcommand 2>/dev/null").exit_code == 2);
}

TEST_CASE("parallel with one chunk is byte-identical to stats") {
    TempFile f("0.25 1.5 -3 4.125 5 6 7 8.5\n");
    const auto stats = run(cli + " stats --format json " + f.path);
    auto parallel = run(cli + " parallel --chunks 1 --format json " + f.path);
    REQUIRE(stats.exit_code == 0);
    REQUIRE(parallel.exit_code == 0);
    auto js = json::parse(stats.output);
    auto jp = json::parse(parallel.output);
    js.erase("elapsed_ms");
    jp.erase("elapsed_ms");
    CHECK(js.dump() == jp.dump());
}

TEST_CASE("parallel agrees with stats across chunk counts") {
    std::string content;
    unsigned long long state = 88172645463325252ULL;
    for (int i = 0; i < 5000; ++i) {
        state ^= state << 13; state ^= state >> 7; state ^= state << 17;
        content += std::to_string(static_cast<double>(state % 100000) / 1000.0) + "\n";
    }
    TempFile f(content);
    const auto js = json::parse(run(cli + " stats --format json " + f.path).output);
    for (int chunks : {2, 4, 16, 64}) {
        const auto jp = json::parse(
            run(cli + " parallel --chunks " + std::to_string(chunks) + " --format json " + f.path)
                .output);
        for (const char* key : {"mean", "variance", "skewness", "kurtosis"}) {
            const double a = js[key].get<double>();
            const double b = jp[key].get<double>();
            CHECK(std::abs(a - b) <= 1e-9 * std::abs(a) + 1e-12);
        }
    }
}

TEST_CASE("compare output is byte-identical across runs at a fixed seed") {
    const std::string cmd = cli + " compare --n 2000 --seed 99";
    const auto a = run(cmd);
    const auto b = run(cmd);
    CHECK(a.exit_code == 0);
    CHECK(a.output == b.output);
    CHECK_FALSE(a.output.empty());
}

TEST_CASE("compare with no offset shows both paths agreeing with the oracle") {
    const auto r = run(cli + " compare --n 10000 --mean-offset 0 --seed 5");
    REQUIRE(r.exit_code == 0);
    // Pull the m2 row and check the relative-error columns.
    std::istringstream lines(r.output);
    std::string line;
    bool found = false;
    while (std::getline(lines, line)) {
        if (line.rfind("m2", 0) != 0) continue;
        found = true;
        std::istringstream cols(line);
        std::string name;
        double oracle, stable, naive, stable_abs, stable_rel, naive_abs, naive_rel;
        cols >> name >> oracle >> stable >> naive >> stable_abs >> stable_rel >> naive_abs >>
            naive_rel;
        CHECK(stable_rel <= 1e-10);
        CHECK(naive_rel <= 1e-10);
    }
    CHECK(found);
}

TEST_CASE("bench --instrument reports the order-4 operation counts") {
    const auto r = run(cli + " bench --n 20000 --order 4 --instrument");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("divisions=1") != std::string::npos);
    CHECK(r.output.find("order4") != std::string::npos);
}
