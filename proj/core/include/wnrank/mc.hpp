#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "wnrank/lstat.hpp"
#include "wnrank/simgen.hpp"

namespace wnrank {

/// One entry of a Monte Carlo method list: either an analytic max-type test
/// (L == 0) or a permutation-calibrated L-statistic (L >= 1 with B
/// permutations).
struct McMethod {
    Method method = Method::TauStar;
    int L = 0;
    int B = 0;

    std::string label() const;
};

/// Replication grid. Null runs use `model_ids` from {i..viii}; power runs use
/// {I..VIII} together with rho_list and k0_list sweeps.
struct McGrid {
    std::vector<std::string> model_ids;
    std::vector<McMethod> methods;
    std::vector<int> n_list;
    std::vector<int> p_list;
    std::vector<int> K_list;
    std::vector<double> rho_list{0.5};  // power runs only
    std::vector<int> k0_list{2};        // power runs only
    int reps = 500;
    double alpha = 0.05;
    std::uint64_t base_seed = 0;
    int threads = 0;
    int burn_in = 200;
    bool fixed_A = false;  ///< reuse one coefficient matrix across replicates
};

/// One (model, method, n, p, K[, rho, k0, L]) cell of a rejection table.
struct McCell {
    std::string model;
    std::string method;
    int n = 0;
    int p = 0;
    int K = 0;
    double rho = 0.0;  // 0 for null models
    int k0 = 0;        // 0 for null models
    int L = 0;         // 0 for analytic tests
    int B = 0;
    int reps = 0;
    int rejections = 0;
    int failed = 0;
    double rate = 0.0;
    double mc_se = 0.0;
    bool partial = false;  ///< more than 1% of replicates failed

    bool operator==(const McCell&) const = default;
};

/// Rejection-frequency table plus run metadata.
struct McTable {
    std::vector<McCell> cells;
    std::uint64_t base_seed = 0;
    double alpha = 0.05;
    double wall_seconds = 0.0;

    bool operator==(const McTable& other) const {
        return cells == other.cells && base_seed == other.base_seed && alpha == other.alpha;
    }
};

/// Empirical sizes over the null models of the grid.
McTable run_size(const McGrid& grid);

/// Empirical powers over the alternative models of the grid, sweeping
/// rho_list x k0_list.
McTable run_power(const McGrid& grid);

}  // namespace wnrank
