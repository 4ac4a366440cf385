#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>

#include "wnrank/panel.hpp"
#include "wnrank/ranks.hpp"

namespace wnrank {

/// The per-pair statistics offered by the library.
enum class Method {
    SpearmanRho,
    KendallTau,
    HoeffdingD,
    BkrR,
    TauStar,
    ChatterjeeXi,
    GenericSLR,
};

std::string method_name(Method method);
Method method_from_name(const std::string& name);

/// One rank-correlation evaluation together with its null moments. The null
/// variance is exact and finite-sample where a closed form exists (Spearman,
/// Kendall, generic linear rank statistics) and the leading-order asymptotic
/// term otherwise (Hoeffding D, BKR R, tau*, Chatterjee xi).
struct CorrValue {
    Method method = Method::SpearmanRho;
    double value = 0.0;
    int m = 0;  ///< effective sample length of the pair
    double null_mean = 0.0;
    double null_var = 0.0;
};

/// Regression-constant / score function pair for a simple linear rank
/// statistic; both act on (0, 1).
struct ScorePair {
    std::function<double(double)> f;
    std::function<double(double)> g;
    double lipschitz_bound = 0.0;

    /// Checks both functions are finite on a 1024-point grid of (0,1).
    void validate() const;
};

/// Spearman rank correlation from a relative-rank profile. Null variance is
/// the exact 1/(m-1).
CorrValue spearman_rho(const RankProfile& profile);

/// Kendall rank correlation via O(m log m) inversion counting on the relative
/// ranks. Null variance is the exact 2(2m+5)/(9m(m-1)).
CorrValue kendall_tau(const LagPairSample& pair);
CorrValue kendall_tau(const RankProfile& profile);

/// Hoeffding dependence statistic (order-5 U-statistic), evaluated by a
/// rank-counting identity in O(m log m) after ranking.
CorrValue hoeffding_d(const LagPairSample& pair);
CorrValue hoeffding_d(const RankProfile& profile);

/// Blum-Kiefer-Rosenblatt statistic (order-6 U-statistic), O(m^2).
CorrValue bkr_r(const LagPairSample& pair);
CorrValue bkr_r(const RankProfile& profile);

/// Bergsma-Dassios-Yanagimoto tau-star (order-4 U-statistic), O(m^2).
CorrValue tau_star(const LagPairSample& pair);
CorrValue tau_star(const RankProfile& profile);

/// Chatterjee rank correlation: 1 - 3 * sum |r_{s+1} - r_s| / (m^2 - 1) with
/// the relative ranks taken in x-sorted order. Asymptotic null variance
/// 2/(5m).
CorrValue chatterjee_xi(const LagPairSample& pair);
CorrValue chatterjee_xi(const RankProfile& profile);

/// Simple linear rank statistic sqrt(m) * sum_t c_t g(r_t/(m+1)) with
/// c_t = f(t/(m+1))/m, plus its exact null mean and variance. Throws
/// InvalidScore when either score is degenerate (zero variance) or evaluates
/// to a non-finite value.
CorrValue simple_linear_rank(const RankProfile& profile, const ScorePair& scores);

/// Exact null moments of the simple linear rank statistic for length m.
struct SlrMoments {
    double mean;
    double var;
};
SlrMoments slr_null_moments(int m, const ScorePair& scores);

namespace detail {

/// Signed sum of concordances minus discordances over all index pairs,
/// computed as C(m,2) - 2 * inversions(r) by merge-sort counting.
std::int64_t kendall_numerator(std::span<const std::int32_t> relative_ranks);

/// The three degenerate U-statistics from a relative-rank permutation in one
/// O(m^2) sweep. Flags select which values are computed (others are NaN).
struct DegenerateValues {
    double d = 0.0;
    double r = 0.0;
    double tau_star = 0.0;
};
DegenerateValues degenerate_stats(std::span<const std::int32_t> relative_ranks, bool want_d,
                                  bool want_r, bool want_tau_star);

}  // namespace detail

}  // namespace wnrank
