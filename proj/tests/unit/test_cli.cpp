#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "wnrank/cli.hpp"
#include "wnrank/csv.hpp"
#include "wnrank/parallel.hpp"
#include "wnrank/result_json.hpp"
#include "wnrank/rng.hpp"
#include "wnrank/simgen.hpp"

using namespace wnrank;

namespace {

namespace fs = std::filesystem;

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("wnrank_test_" + std::to_string(std::random_device{}()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

std::string write_gaussian_csv(const TempDir& dir, int n, int p, std::uint64_t seed) {
    NullModelSpec spec;
    spec.n = n;
    spec.p = p;
    spec.seed = seed;
    const std::string path = dir.file("panel.csv");
    write_csv_file(path, gen_null(spec));
    return path;
}

}  // namespace

TEST_CASE("cmd_test accepts an i.i.d. panel") {
    TempDir dir;
    const std::string csv = write_gaussian_csv(dir, 120, 6, 31337);
    const std::string out = dir.file("result.json");
    const int code = run_cli({"test", "--input", csv, "--method", "taustar", "--K", "2",
                              "--alpha", "0.05", "--out", out});
    CHECK(code == 0);
    const ResultDocument doc = result_document_from_json(read_file(out));
    const TestOutcome& outcome = std::get<TestOutcome>(doc.outcome);
    CHECK_FALSE(outcome.reject);
    CHECK(outcome.n == 120);
    CHECK(outcome.p == 6);
}

TEST_CASE("cmd_test flags a planted lagged copy and names the pair") {
    TempDir dir;
    auto engine = make_engine(5150);
    std::normal_distribution<double> normal;
    const int n = 80, p = 4;
    std::vector<double> cm(static_cast<std::size_t>(n) * p);
    for (auto& v : cm) v = normal(engine);
    for (int t = 1; t < n; ++t) cm[n + t] = cm[t - 1];
    SeriesPanel panel(n, p, std::move(cm), {"alpha", "beta", "gamma", "delta"});
    const std::string csv = dir.file("planted.csv");
    write_csv_file(csv, panel);

    const std::string out = dir.file("result.json");
    const int code = run_cli({"test", "--input", csv, "--has-header", "--method", "rho", "--K",
                              "2", "--alpha", "0.05", "--out", out});
    CHECK(code == 1);
    const ResultDocument doc = result_document_from_json(read_file(out));
    const TestOutcome& outcome = std::get<TestOutcome>(doc.outcome);
    CHECK(outcome.reject);
    CHECK(doc.argmax_i_label == "alpha");
    CHECK(doc.argmax_j_label == "beta");
    CHECK(outcome.argmax_k == 1);
}

TEST_CASE("cmd_test usage errors exit with 2") {
    TempDir dir;
    const std::string csv = write_gaussian_csv(dir, 40, 2, 1);
    CHECK(run_cli({"test", "--input", csv, "--method", "rho", "--alpha", "1.5"}) == 2);
    CHECK(run_cli({"test", "--input", csv, "--method", "bogus"}) == 2);
    CHECK(run_cli({"test", "--input", csv, "--method", "rho", "--L", "3"}) == 2);
    CHECK(run_cli({"test", "--input", csv, "--method", "rho", "--perms", "200"}) == 2);
    CHECK(run_cli({"test", "--input", dir.file("missing.csv"), "--method", "rho"}) == 2);
    CHECK(run_cli({"bogus-subcommand"}) == 2);
}

TEST_CASE("cmd_test lstat path works end to end") {
    TempDir dir;
    const std::string csv = write_gaussian_csv(dir, 60, 3, 777);
    const std::string out = dir.file("result.json");
    const int code =
        run_cli({"test", "--input", csv, "--method", "lstat", "--lstat-base", "taustar", "--L",
                 "3", "--perms", "100", "--seed", "9", "--K", "1", "--out", out});
    CHECK(code == 0);
    const ResultDocument doc = result_document_from_json(read_file(out));
    const TestOutcome& outcome = std::get<TestOutcome>(doc.outcome);
    CHECK(outcome.L == 3);
    CHECK(outcome.permutations == 100);
    CHECK(outcome.p_value > 0.0);
}

TEST_CASE("cmd_test exit code is stable across output formats") {
    TempDir dir;
    const std::string csv = write_gaussian_csv(dir, 60, 3, 424243);
    const int json_code = run_cli({"test", "--input", csv, "--method", "rho", "--K", "1",
                                   "--out", dir.file("a.json")});
    const int csv_code = run_cli({"test", "--input", csv, "--method", "rho", "--K", "1", "--csv",
                                  "--out", dir.file("a.csv")});
    CHECK(json_code == csv_code);
    const std::string text = read_file(dir.file("a.csv"));
    CHECK(text.rfind("method,", 0) == 0);
}

TEST_CASE("cmd_simulate produces one cell per method") {
    TempDir dir;
    const std::string out = dir.file("table.json");
    const int code = run_cli({"simulate", "--mode", "size", "--models", "i", "--methods",
                              "d,taustar", "--n", "30", "--p", "3", "--K", "1", "--reps", "100",
                              "--alpha", "0.05", "--seed", "5", "--out", out});
    CHECK(code == 0);
    const ResultDocument doc = result_document_from_json(read_file(out));
    const McTable& table = std::get<McTable>(doc.outcome);
    CHECK(table.cells.size() == 2);
    CHECK(table.cells[0].reps == 100);
}

TEST_CASE("cmd_simulate power sweep emits a curve") {
    TempDir dir;
    const std::string out = dir.file("curve.csv");
    const int code = run_cli({"simulate", "--mode", "power", "--models", "I", "--methods", "rho",
                              "--n", "30", "--p", "3", "--K", "1", "--rho", "0.1:0.9:5", "--k0",
                              "2", "--reps", "100", "--seed", "6", "--csv", "--out", out});
    CHECK(code == 0);
    const std::string text = read_file(out);
    CHECK(std::count(text.begin(), text.end(), '\n') == 6);  // header + 5 rho values
}

TEST_CASE("cmd_simulate guards") {
    CHECK(run_cli({"simulate", "--mode", "size", "--models", "i", "--methods", "rho", "--reps",
                   "10"}) == 2);
    CHECK(run_cli({"simulate", "--mode", "size", "--models", "nope", "--methods", "rho",
                   "--reps", "100"}) == 2);
    CHECK(run_cli({"simulate", "--mode", "size", "--models", "i", "--methods", "rho", "--alpha",
                   "1.0", "--reps", "100"}) == 2);
}

TEST_CASE("cmd_simulate can dump a generated panel") {
    TempDir dir;
    const std::string panel_path = dir.file("panel.csv");
    const int code = run_cli({"simulate", "--mode", "size", "--models", "i", "--methods", "rho",
                              "--n", "25", "--p", "4", "--K", "1", "--reps", "100", "--seed",
                              "7", "--emit-panel", panel_path, "--out", dir.file("t.json")});
    CHECK(code == 0);
    const SeriesPanel panel = load_csv_file(panel_path, false);
    CHECK(panel.n() == 25);
    CHECK(panel.p() == 4);
}

TEST_CASE("seed is echoed when drawn from entropy") {
    TempDir dir;
    const std::string csv = write_gaussian_csv(dir, 40, 2, 2);
    const std::string out = dir.file("result.json");
    run_cli({"test", "--input", csv, "--method", "rho", "--K", "1", "--out", out});
    const ResultDocument doc = result_document_from_json(read_file(out));
    bool has_seed = false;
    for (const auto& [key, value] : doc.command) {
        if (key == "seed") {
            has_seed = true;
            CHECK(!value.empty());
        }
    }
    CHECK(has_seed);
}

TEST_CASE("WN_THREADS is the fallback worker count") {
    setenv("WN_THREADS", "3", 1);
    CHECK(resolve_threads(0) == 3);
    CHECK(resolve_threads(2) == 2);
    unsetenv("WN_THREADS");
    CHECK(resolve_threads(0) >= 1);
}

TEST_CASE("wntest binary smoke test") {
    TempDir dir;
    const std::string csv = write_gaussian_csv(dir, 100, 10, 90219);
    const std::string cmd = std::string(WNTEST_BINARY_PATH) + " test --input " + csv +
                            " --method d --K 1 --alpha 0.05 --out " + dir.file("out.json");
    const int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    CHECK(WEXITSTATUS(status) == 0);

    const std::string bad = std::string(WNTEST_BINARY_PATH) + " test --method rho 2>/dev/null";
    const int bad_status = std::system(bad.c_str());
    CHECK(WEXITSTATUS(bad_status) == 2);
}
