#include "wnrank/cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "wnrank/csv.hpp"
#include "wnrank/lstat.hpp"
#include "wnrank/max_test.hpp"
#include "wnrank/mc.hpp"
#include "wnrank/parallel.hpp"
#include "wnrank/result_json.hpp"
#include "wnrank/rng.hpp"

namespace wnrank {

namespace {

constexpr const char* kTestMethods = "rho,tau,d,r,taustar,xi,lstat";

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

std::vector<int> parse_int_list(const std::string& text, const std::string& flag) {
    std::vector<int> out;
    for (const auto& item : split_list(text)) {
        try {
            out.push_back(std::stoi(item));
        } catch (const std::exception&) {
            throw UsageError(flag + ": cannot parse '" + item + "' as an integer");
        }
    }
    if (out.empty()) throw UsageError(flag + ": empty list");
    return out;
}

// Either "a,b,c" or a sweep "lo:hi:count".
std::vector<double> parse_double_list(const std::string& text, const std::string& flag) {
    std::vector<double> out;
    if (text.find(':') != std::string::npos) {
        const auto parts = [&] {
            std::vector<std::string> p;
            std::stringstream ss(text);
            std::string item;
            while (std::getline(ss, item, ':')) p.push_back(item);
            return p;
        }();
        if (parts.size() != 3) {
            throw UsageError(flag + ": sweep must be lo:hi:count, got '" + text + "'");
        }
        try {
            const double lo = std::stod(parts[0]);
            const double hi = std::stod(parts[1]);
            const int count = std::stoi(parts[2]);
            if (count < 1) throw UsageError(flag + ": sweep count must be >= 1");
            for (int s = 0; s < count; ++s) {
                out.push_back(count == 1 ? lo : lo + (hi - lo) * s / (count - 1));
            }
        } catch (const UsageError&) {
            throw;
        } catch (const std::exception&) {
            throw UsageError(flag + ": cannot parse sweep '" + text + "'");
        }
        return out;
    }
    for (const auto& item : split_list(text)) {
        try {
            out.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw UsageError(flag + ": cannot parse '" + item + "' as a number");
        }
    }
    if (out.empty()) throw UsageError(flag + ": empty list");
    return out;
}

std::uint64_t resolve_seed(std::uint64_t requested, bool given) {
    if (given) return requested;
    std::random_device rd;
    return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

/// Deterministic tie-breaking jitter: +- 1e-9 of the column range, drawn from
/// the seed. Used only when --jitter is requested.
SeriesPanel jitter_panel(const SeriesPanel& panel, std::uint64_t seed) {
    const int n = panel.n();
    const int p = panel.p();
    auto engine = make_engine(derive_seed(seed, {0x6a697474ULL}));
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    std::vector<double> data(panel.data());
    for (int c = 0; c < p; ++c) {
        auto col = panel.col(c);
        const auto [lo, hi] = std::minmax_element(col.begin(), col.end());
        double range = *hi - *lo;
        if (range == 0.0) range = 1.0;
        for (int t = 0; t < n; ++t) {
            data[static_cast<std::size_t>(c) * n + t] += unif(engine) * 1e-9 * range;
        }
    }
    return SeriesPanel(n, p, std::move(data), panel.column_names());
}

void emit_document(const ResultDocument& doc, bool csv, const std::string& out_path) {
    const std::string text = csv ? to_csv(doc) : to_json(doc);
    if (out_path.empty()) {
        std::cout << text;
        if (!csv) std::cout << '\n';
    } else {
        std::ofstream out(out_path);
        if (!out) {
            throw InvalidInput("cannot open '" + out_path + "' for writing");
        }
        out << text;
        if (!csv) out << '\n';
    }
}

struct TestOptions {
    std::string input;
    bool has_header = false;
    std::string method = "rho";
    std::string lstat_base = "taustar";
    int K = 2;
    double alpha = 0.05;
    int L = 1;
    int perms = 500;
    std::uint64_t seed = 0;
    bool seed_given = false;
    bool l_given = false;
    bool perms_given = false;
    bool jitter = false;
    int threads = 0;
    bool csv = false;
    std::string out_path;
};

int cmd_test(const TestOptions& opt) {
    if (!(opt.alpha > 0.0) || !(opt.alpha < 1.0)) {
        throw UsageError("--alpha must lie in (0, 1)");
    }
    const bool lstat = opt.method == "lstat";
    if (!lstat && (opt.l_given || opt.perms_given)) {
        throw UsageError("--L and --perms apply only to --method lstat");
    }

    const auto t0 = std::chrono::steady_clock::now();
    const std::uint64_t seed = resolve_seed(opt.seed, opt.seed_given);

    SeriesPanel panel = load_csv_file(opt.input, opt.has_header);
    Warnings warnings;
    if (opt.jitter) {
        if (panel.has_ties()) {
            panel = jitter_panel(panel, seed);
            warnings.push_back("ties broken by seeded jitter (magnitude 1e-9 of column range)");
        }
    }

    ResultDocument doc;
    TestOutcome outcome;
    if (lstat) {
        LStatConfig config;
        config.L = opt.L;
        config.method = method_from_name(opt.lstat_base);
        config.B = opt.perms;
        config.alpha = opt.alpha;
        config.seed = seed;
        outcome = permutation_test(panel, config, opt.K, opt.threads, &warnings);
    } else {
        const Method method = method_from_name(opt.method);
        PairScan scan = pair_scan(panel, opt.K, method, opt.threads, &warnings);
        outcome = max_test(scan, opt.alpha);
    }

    doc.outcome = outcome;
    doc.warnings = warnings;
    doc.argmax_i_label = panel.column_label(outcome.argmax_i);
    doc.argmax_j_label = panel.column_label(outcome.argmax_j);
    doc.command = {{"command", "test"},
                   {"input", opt.input},
                   {"has_header", opt.has_header ? "true" : "false"},
                   {"method", opt.method},
                   {"K", std::to_string(opt.K)},
                   {"alpha", format_double(opt.alpha)},
                   {"threads", std::to_string(resolve_threads(opt.threads))},
                   {"seed", std::to_string(seed)},
                   {"jitter", opt.jitter ? "true" : "false"}};
    if (lstat) {
        doc.command.emplace_back("lstat_base", opt.lstat_base);
        doc.command.emplace_back("L", std::to_string(opt.L));
        doc.command.emplace_back("perms", std::to_string(opt.perms));
    }
    doc.timing_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    emit_document(doc, opt.csv, opt.out_path);
    return outcome.reject ? 1 : 0;
}

struct SimulateOptions {
    std::string mode = "size";
    std::string models;
    std::string methods;
    std::string n_list = "100";
    std::string p_list = "30";
    std::string k_list = "2";
    std::string rho_list = "0.5";
    std::string k0_list = "2";
    std::string l_list;
    int perms = 500;
    int reps = 500;
    double alpha = 0.05;
    std::uint64_t seed = 0;
    bool seed_given = false;
    int threads = 0;
    bool fixed_a = false;
    int burn_in = 200;
    bool csv = false;
    std::string out_path;
    std::string emit_panel;
};

int cmd_simulate(const SimulateOptions& opt) {
    if (opt.reps < 100) {
        throw UsageError("--reps must be >= 100");
    }
    if (!(opt.alpha > 0.0) || !(opt.alpha < 1.0)) {
        throw UsageError("--alpha must lie in (0, 1)");
    }
    const bool power = opt.mode == "power";
    const std::uint64_t seed = resolve_seed(opt.seed, opt.seed_given);

    McGrid grid;
    grid.model_ids = split_list(opt.models);
    if (grid.model_ids.empty()) throw UsageError("--models: empty list");
    const std::vector<int> Ls =
        opt.l_list.empty() ? std::vector<int>{} : parse_int_list(opt.l_list, "--L");
    for (const std::string& name : split_list(opt.methods)) {
        const Method method = method_from_name(name);
        if (Ls.empty()) {
            grid.methods.push_back({method, 0, 0});
        } else {
            for (int L : Ls) grid.methods.push_back({method, L, opt.perms});
        }
    }
    if (grid.methods.empty()) throw UsageError("--methods: empty list");
    grid.n_list = parse_int_list(opt.n_list, "--n");
    grid.p_list = parse_int_list(opt.p_list, "--p");
    grid.K_list = parse_int_list(opt.k_list, "--K");
    grid.rho_list = parse_double_list(opt.rho_list, "--rho");
    grid.k0_list = parse_int_list(opt.k0_list, "--k0");
    grid.reps = opt.reps;
    grid.alpha = opt.alpha;
    grid.base_seed = seed;
    grid.threads = opt.threads;
    grid.burn_in = opt.burn_in;
    grid.fixed_A = opt.fixed_a;

    if (!opt.emit_panel.empty()) {
        if (power) {
            AltModelSpec spec = alt_model_from_id(grid.model_ids.front(), grid.rho_list.front(),
                                                  grid.k0_list.front(), grid.n_list.front(),
                                                  grid.p_list.front(), derive_seed(seed, {0}));
            spec.burn_in = opt.burn_in;
            write_csv_file(opt.emit_panel, gen_alt(spec));
        } else {
            NullModelSpec spec = null_model_from_id(grid.model_ids.front(), grid.n_list.front(),
                                                    grid.p_list.front(), derive_seed(seed, {0}));
            write_csv_file(opt.emit_panel, gen_null(spec));
        }
    }

    const auto t0 = std::chrono::steady_clock::now();
    McTable table = power ? run_power(grid) : run_size(grid);

    ResultDocument doc;
    doc.outcome = std::move(table);
    doc.command = {{"command", "simulate"},
                   {"mode", opt.mode},
                   {"models", opt.models},
                   {"methods", opt.methods},
                   {"n", opt.n_list},
                   {"p", opt.p_list},
                   {"K", opt.k_list},
                   {"reps", std::to_string(opt.reps)},
                   {"alpha", format_double(opt.alpha)},
                   {"threads", std::to_string(resolve_threads(opt.threads))},
                   {"seed", std::to_string(seed)}};
    if (power) {
        doc.command.emplace_back("rho", opt.rho_list);
        doc.command.emplace_back("k0", opt.k0_list);
        doc.command.emplace_back("burn_in", std::to_string(opt.burn_in));
        doc.command.emplace_back("fixed_A", opt.fixed_a ? "true" : "false");
    }
    if (!Ls.empty()) {
        doc.command.emplace_back("L", opt.l_list);
        doc.command.emplace_back("perms", std::to_string(opt.perms));
    }
    doc.timing_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    emit_document(doc, opt.csv, opt.out_path);
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"Distribution-free white noise tests for multivariate time series"};
    app.require_subcommand(1);

    TestOptions test_opt;
    CLI::App* test = app.add_subcommand("test", "Test a CSV panel for white noise");
    test->add_option("--input", test_opt.input, "CSV file, rows = time")->required();
    test->add_flag("--has-header", test_opt.has_header, "First row holds column names");
    test->add_option("--method", test_opt.method, "One of " + std::string(kTestMethods))
        ->check(CLI::IsMember(split_list(kTestMethods)));
    test->add_option("--lstat-base", test_opt.lstat_base,
                     "Statistic under the L-test (lstat only)")
        ->check(CLI::IsMember(split_list("rho,tau,d,r,taustar,xi")));
    test->add_option("--K", test_opt.K, "Maximum lag")->check(CLI::PositiveNumber);
    test->add_option("--alpha", test_opt.alpha, "Significance level");
    CLI::Option* l_opt = test->add_option("--L", test_opt.L, "Top-L sum (lstat only)");
    CLI::Option* perms_opt =
        test->add_option("--perms", test_opt.perms, "Permutation count (lstat only)");
    CLI::Option* seed_opt = test->add_option("--seed", test_opt.seed, "RNG seed");
    test->add_flag("--jitter", test_opt.jitter, "Break ties by seeded 1e-9-range jitter");
    test->add_option("--threads", test_opt.threads, "Worker threads (default: WN_THREADS or auto)");
    test->add_flag("--csv", test_opt.csv, "Emit CSV instead of JSON");
    CLI::Option* test_json = test->add_flag("--json", "Emit JSON (default)");
    test->add_option("--out", test_opt.out_path, "Write the document here instead of stdout");
    test_json->excludes("--csv");

    SimulateOptions sim_opt;
    CLI::App* sim = app.add_subcommand("simulate", "Monte Carlo size/power tables");
    sim->add_option("--mode", sim_opt.mode, "size or power")
        ->check(CLI::IsMember(std::vector<std::string>{"size", "power"}));
    sim->add_option("--models", sim_opt.models, "Model ids (size: i..viii, power: I..VIII)")
        ->required();
    sim->add_option("--methods", sim_opt.methods, "Comma list of rho,tau,d,r,taustar,xi")
        ->required();
    sim->add_option("--n", sim_opt.n_list, "Sample lengths, comma list");
    sim->add_option("--p", sim_opt.p_list, "Dimensions, comma list");
    sim->add_option("--K", sim_opt.k_list, "Max lags, comma list");
    sim->add_option("--rho", sim_opt.rho_list, "Signal levels: comma list or lo:hi:count sweep");
    sim->add_option("--k0", sim_opt.k0_list, "Signal block sizes, comma list");
    sim->add_option("--L", sim_opt.l_list, "L values; turns methods into permutation L-tests");
    sim->add_option("--perms", sim_opt.perms, "Permutation count for L-tests");
    sim->add_option("--reps", sim_opt.reps, "Monte Carlo replications (>= 100)");
    sim->add_option("--alpha", sim_opt.alpha, "Significance level");
    CLI::Option* sim_seed_opt = sim->add_option("--seed", sim_opt.seed, "Base seed");
    sim->add_option("--threads", sim_opt.threads, "Worker threads");
    sim->add_flag("--fixed-A", sim_opt.fixed_a, "One coefficient matrix for the whole run");
    sim->add_option("--burn-in", sim_opt.burn_in, "Burn-in steps for autoregressive models");
    sim->add_flag("--csv", sim_opt.csv, "Emit CSV instead of JSON");
    CLI::Option* sim_json = sim->add_flag("--json", "Emit JSON (default)");
    sim->add_option("--out", sim_opt.out_path, "Write the document here instead of stdout");
    sim->add_option("--emit-panel", sim_opt.emit_panel, "Also dump one generated panel as CSV");
    sim_json->excludes("--csv");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            // --help and friends.
            return app.exit(e);
        }
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }

    try {
        if (test->parsed()) {
            test_opt.seed_given = seed_opt->count() > 0;
            test_opt.l_given = l_opt->count() > 0;
            test_opt.perms_given = perms_opt->count() > 0;
            return cmd_test(test_opt);
        }
        sim_opt.seed_given = sim_seed_opt->count() > 0;
        return cmd_simulate(sim_opt);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}

int run_cli(int argc, char** argv) {
    std::vector<std::string> args;
    args.reserve(argc > 0 ? argc - 1 : 0);
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run_cli(args);
}

}  // namespace wnrank
