#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wnrank/correlations.hpp"
#include "wnrank/panel.hpp"

namespace wnrank {

/// Warnings collected while scanning (tied columns and the like).
using Warnings = std::vector<std::string>;

/// The standardized statistic for every (lag k, column i, column j) cell,
/// including i == j. Cells hold the signed standardized value z whose square
/// (for Spearman / Kendall / Chatterjee / generic linear rank statistics) or
/// raw value (for the degenerate U-statistics, already on the chi-square
/// scale) enters the max test; the L-statistics consume |z|.
struct PairScan {
    Method method = Method::SpearmanRho;
    int n = 0;
    int p = 0;
    int K = 0;
    std::vector<double> values;  ///< index ((k-1)*p + i)*p + j

    std::int64_t N() const { return static_cast<std::int64_t>(K) * p * p; }
    double at(int k, int i, int j) const {
        return values[(static_cast<std::size_t>(k - 1) * p + i) * p + j];
    }
};

/// Evaluates the chosen statistic for every pair (i, j) and lag 1..K.
/// Requires n - K >= 8. Tied columns are reported through `warnings` (the
/// scan still runs, with stable tie-breaking in the ranks).
PairScan pair_scan(const SeriesPanel& panel, int K, Method method, int threads = 0,
                   Warnings* warnings = nullptr);

/// Same pass for several methods at once; the rank work per (i, j, k) cell is
/// shared, which is the layout the Monte Carlo driver uses.
std::vector<PairScan> pair_scan_multi(const SeriesPanel& panel, int K,
                                      std::span<const Method> methods, int threads = 0,
                                      Warnings* warnings = nullptr);

/// Scan for a user-supplied simple linear rank statistic; cells are
/// (V - E_H0 V) / sigma_V with the exact null moments.
PairScan pair_scan_slr(const SeriesPanel& panel, int K, const ScorePair& scores, int threads = 0,
                       Warnings* warnings = nullptr);

}  // namespace wnrank
