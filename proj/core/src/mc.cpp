#include "wnrank/mc.hpp"

#include <bit>
#include <chrono>
#include <cmath>

#include "wnrank/parallel.hpp"
#include "wnrank/rng.hpp"

namespace wnrank {

namespace {

constexpr std::uint64_t kTagPanel = 0x70616e656cULL;
constexpr std::uint64_t kTagFixedA = 0x6669786141ULL;
constexpr std::uint64_t kTagLstat = 0x6c73746174ULL;

struct CellCoords {
    std::string model;
    int form = 0;  // 0..7 null, 1..8 alternative
    int n = 0;
    int p = 0;
    int K = 0;
    double rho = 0.0;
    int k0 = 0;
};

void validate_grid(const McGrid& grid, bool power) {
    if (grid.reps < 100) {
        throw InvalidInput("reps must be >= 100, got " + std::to_string(grid.reps));
    }
    if (!(grid.alpha > 0.0) || !(grid.alpha < 1.0)) {
        throw InvalidAlpha("alpha must lie in (0, 1), got " + std::to_string(grid.alpha));
    }
    if (grid.model_ids.empty() || grid.methods.empty() || grid.n_list.empty() ||
        grid.p_list.empty() || grid.K_list.empty()) {
        throw InvalidInput("grid needs at least one model, method, n, p and K");
    }
    if (power && (grid.rho_list.empty() || grid.k0_list.empty())) {
        throw InvalidInput("power grid needs rho and k0 values");
    }
    for (int n : grid.n_list) {
        for (int K : grid.K_list) {
            if (n - K < kMinPairLength) {
                throw InvalidInput("n=" + std::to_string(n) + " with K=" + std::to_string(K) +
                                   " leaves fewer than " + std::to_string(kMinPairLength) +
                                   " aligned points");
            }
        }
    }
}

std::uint64_t replicate_seed(const McGrid& grid, const CellCoords& c, int rep) {
    return derive_seed(grid.base_seed,
                       {kTagPanel, static_cast<std::uint64_t>(c.form),
                        static_cast<std::uint64_t>(c.n), static_cast<std::uint64_t>(c.p),
                        static_cast<std::uint64_t>(c.K), std::bit_cast<std::uint64_t>(c.rho),
                        static_cast<std::uint64_t>(c.k0), static_cast<std::uint64_t>(rep)});
}

McTable run_grid(const McGrid& grid, bool power) {
    validate_grid(grid, power);
    const auto t0 = std::chrono::steady_clock::now();

    // Split methods into analytic max tests and permutation L-statistics;
    // the latter grouped by (method, B) so permuted scans are shared.
    std::vector<std::size_t> analytic;      // indices into grid.methods
    struct PermGroup {
        Method method;
        int B;
        std::vector<int> Ls;
        std::vector<std::size_t> entries;  // parallel to Ls
    };
    std::vector<PermGroup> perm_groups;
    for (std::size_t e = 0; e < grid.methods.size(); ++e) {
        const McMethod& mm = grid.methods[e];
        if (mm.L <= 0) {
            analytic.push_back(e);
            continue;
        }
        PermGroup* group = nullptr;
        for (auto& g : perm_groups) {
            if (g.method == mm.method && g.B == mm.B) group = &g;
        }
        if (!group) {
            perm_groups.push_back({mm.method, mm.B, {}, {}});
            group = &perm_groups.back();
        }
        group->Ls.push_back(mm.L);
        group->entries.push_back(e);
    }
    std::vector<Method> analytic_methods;
    for (std::size_t e : analytic) analytic_methods.push_back(grid.methods[e].method);

    // Flat list of grid points (everything except the method axis).
    std::vector<CellCoords> points;
    for (const std::string& id : grid.model_ids) {
        for (int n : grid.n_list) {
            for (int p : grid.p_list) {
                for (int K : grid.K_list) {
                    if (power) {
                        for (double rho : grid.rho_list) {
                            for (int k0 : grid.k0_list) {
                                AltModelSpec spec = alt_model_from_id(id, rho, k0, n, p, 0);
                                points.push_back({alt_model_id(spec), spec.form, n, p, K, rho, k0});
                            }
                        }
                    } else {
                        NullModelSpec spec = null_model_from_id(id, n, p, 0);
                        const int form = (spec.mixing == Mixing::Toeplitz ? 0 : 4) +
                                         static_cast<int>(spec.innovation);
                        points.push_back({null_model_id(spec), form, n, p, K, 0.0, 0});
                    }
                }
            }
        }
    }

    McTable table;
    table.base_seed = grid.base_seed;
    table.alpha = grid.alpha;

    const int reps = grid.reps;
    const std::size_t n_entries = grid.methods.size();
    for (const CellCoords& point : points) {
        // reject[rep * n_entries + e]; 2 = replicate failed.
        std::vector<std::uint8_t> reject(static_cast<std::size_t>(reps) * n_entries, 0);

        parallel_for(reps, resolve_threads(grid.threads),
                     [&](std::int64_t begin, std::int64_t end, int) {
            for (std::int64_t rep = begin; rep < end; ++rep) {
                const std::uint64_t seed = replicate_seed(grid, point, static_cast<int>(rep));
                std::uint8_t* row = reject.data() + rep * n_entries;
                SeriesPanel panel;
                try {
                    if (power) {
                        AltModelSpec spec;
                        spec.form = point.form;
                        spec.rho = point.rho;
                        spec.k0 = point.k0;
                        spec.n = point.n;
                        spec.p = point.p;
                        spec.seed = seed;
                        spec.burn_in = grid.burn_in;
                        if (grid.fixed_A) {
                            spec.fixed_a_seed = derive_seed(
                                grid.base_seed,
                                {kTagFixedA, static_cast<std::uint64_t>(point.form),
                                 std::bit_cast<std::uint64_t>(point.rho),
                                 static_cast<std::uint64_t>(point.k0),
                                 static_cast<std::uint64_t>(point.p)});
                        }
                        panel = gen_alt(spec);
                    } else {
                        NullModelSpec spec;
                        spec.mixing = point.form < 4 ? Mixing::Toeplitz : Mixing::Uniform;
                        spec.innovation = static_cast<Innovation>(point.form % 4);
                        spec.n = point.n;
                        spec.p = point.p;
                        spec.seed = seed;
                        panel = gen_null(spec);
                    }
                } catch (const DivergedModel&) {
                    for (std::size_t e = 0; e < n_entries; ++e) row[e] = 2;
                    continue;
                }

                if (!analytic_methods.empty()) {
                    auto scans = pair_scan_multi(panel, point.K, analytic_methods, 1);
                    for (std::size_t s = 0; s < analytic.size(); ++s) {
                        const TestOutcome outcome = max_test(scans[s], grid.alpha);
                        row[analytic[s]] = outcome.reject ? 1 : 0;
                    }
                }
                for (const auto& group : perm_groups) {
                    const std::uint64_t perm_seed = derive_seed(
                        seed, {kTagLstat, static_cast<std::uint64_t>(group.method),
                               static_cast<std::uint64_t>(group.B)});
                    auto outcomes = permutation_test_multi(panel, group.method, group.Ls,
                                                           group.B, grid.alpha, perm_seed,
                                                           point.K, 1);
                    for (std::size_t s = 0; s < group.entries.size(); ++s) {
                        row[group.entries[s]] = outcomes[s].reject ? 1 : 0;
                    }
                }
            }
        });

        for (std::size_t e = 0; e < n_entries; ++e) {
            McCell cell;
            cell.model = point.model;
            cell.method = grid.methods[e].label();
            cell.n = point.n;
            cell.p = point.p;
            cell.K = point.K;
            cell.rho = point.rho;
            cell.k0 = point.k0;
            cell.L = grid.methods[e].L;
            cell.B = grid.methods[e].L > 0 ? grid.methods[e].B : 0;
            for (int rep = 0; rep < reps; ++rep) {
                const std::uint8_t v = reject[static_cast<std::size_t>(rep) * n_entries + e];
                if (v == 2) {
                    ++cell.failed;
                } else {
                    ++cell.reps;
                    cell.rejections += v;
                }
            }
            if (cell.reps > 0) {
                cell.rate = static_cast<double>(cell.rejections) / cell.reps;
                cell.mc_se = std::sqrt(cell.rate * (1.0 - cell.rate) / cell.reps);
            }
            cell.partial = cell.failed > 0 && cell.failed * 100 > grid.reps;
            table.cells.push_back(std::move(cell));
        }
    }

    table.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return table;
}

}  // namespace

std::string McMethod::label() const {
    std::string base = method_name(method);
    if (L > 0) {
        return "lstat_" + base + "_L" + std::to_string(L);
    }
    return base;
}

McTable run_size(const McGrid& grid) { return run_grid(grid, false); }

McTable run_power(const McGrid& grid) { return run_grid(grid, true); }

}  // namespace wnrank
