#pragma once

#include <cstdint>
#include <span>

#include "wnrank/max_test.hpp"
#include "wnrank/scan.hpp"

namespace wnrank {

/// Configuration of a permutation-calibrated L-statistic test.
struct LStatConfig {
    int L = 1;                          ///< how many of the largest cells to sum
    Method method = Method::TauStar;    ///< underlying per-pair statistic
    int B = 500;                        ///< permutation replicates
    double alpha = 0.05;
    std::uint64_t seed = 0;

    void validate(std::int64_t n_cells) const;
};

/// Sum of the L largest absolute standardized cells of a scan.
double l_statistic(const PairScan& scan, int L);

/// Rows of the panel rearranged by an explicit permutation (perm[t] is the
/// source row of output row t). Columns stay intact, so cross-sectional
/// dependence is preserved.
SeriesPanel permute_panel(const SeriesPanel& panel, std::span<const std::int32_t> perm);

/// Rows rearranged by a uniform random permutation drawn from `seed`.
SeriesPanel permute_panel(const SeriesPanel& panel, std::uint64_t seed);

/// Permutation test of the L-statistic: the observed value is compared with
/// the empirical upper-alpha quantile over B row-permuted panels, and the
/// p-value uses the add-one estimator (1 + #{permuted >= observed}) / (B+1),
/// so reject == (p_value <= alpha) holds exactly.
TestOutcome permutation_test(const SeriesPanel& panel, const LStatConfig& config, int K,
                             int threads = 0, Warnings* warnings = nullptr);

/// Same test for several L values at once, sharing the B permuted scans.
std::vector<TestOutcome> permutation_test_multi(const SeriesPanel& panel, Method method,
                                                std::span<const int> Ls, int B, double alpha,
                                                std::uint64_t seed, int K, int threads = 0,
                                                Warnings* warnings = nullptr);

}  // namespace wnrank
