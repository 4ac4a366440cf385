#include "wnrank/correlations.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <vector>

#include "wnrank/errors.hpp"

namespace wnrank {

namespace {

void require_length(int m, int need, const char* what) {
    if (m < need) {
        throw TooShort(std::string(what) + ": need m >= " + std::to_string(need) + ", got " +
                       std::to_string(m));
    }
}

double binom(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double v = 1.0;
    for (int i = 1; i <= k; ++i) v *= static_cast<double>(n - k + i) / i;
    return v;
}

// Leading-order null variance of a completely degenerate U-statistic of
// order q whose order-2 projection has squared eigenvalue sum s2.
double degenerate_null_var(int m, int q, double s2) {
    return binom(q, 2) * binom(m - q, q - 2) / binom(m, q) * s2;
}

std::int64_t count_inversions(std::vector<std::int32_t>& a, std::vector<std::int32_t>& tmp,
                              std::size_t lo, std::size_t hi) {
    if (hi - lo < 2) return 0;
    const std::size_t mid = lo + (hi - lo) / 2;
    std::int64_t inv = count_inversions(a, tmp, lo, mid) + count_inversions(a, tmp, mid, hi);
    std::size_t i = lo, j = mid, out = lo;
    while (i < mid && j < hi) {
        if (a[i] <= a[j]) {
            tmp[out++] = a[i++];
        } else {
            inv += static_cast<std::int64_t>(mid - i);
            tmp[out++] = a[j++];
        }
    }
    while (i < mid) tmp[out++] = a[i++];
    while (j < hi) tmp[out++] = a[j++];
    std::copy(tmp.begin() + lo, tmp.begin() + hi, a.begin() + lo);
    return inv;
}

}  // namespace

std::string method_name(Method method) {
    switch (method) {
        case Method::SpearmanRho: return "rho";
        case Method::KendallTau: return "tau";
        case Method::HoeffdingD: return "d";
        case Method::BkrR: return "r";
        case Method::TauStar: return "taustar";
        case Method::ChatterjeeXi: return "xi";
        case Method::GenericSLR: return "slr";
    }
    return "unknown";
}

Method method_from_name(const std::string& name) {
    if (name == "rho") return Method::SpearmanRho;
    if (name == "tau") return Method::KendallTau;
    if (name == "d") return Method::HoeffdingD;
    if (name == "r") return Method::BkrR;
    if (name == "taustar") return Method::TauStar;
    if (name == "xi") return Method::ChatterjeeXi;
    if (name == "slr") return Method::GenericSLR;
    throw UsageError("unknown method '" + name + "'");
}

void ScorePair::validate() const {
    if (!f || !g) {
        throw InvalidScore("score pair: both f and g must be set");
    }
    constexpr int kGrid = 1024;
    for (int i = 1; i <= kGrid; ++i) {
        const double u = static_cast<double>(i) / (kGrid + 1);
        if (!std::isfinite(f(u)) || !std::isfinite(g(u))) {
            throw InvalidScore("score pair: non-finite value at u=" + std::to_string(u));
        }
    }
}

CorrValue spearman_rho(const RankProfile& profile) {
    const int m = profile.m();
    require_length(m, 3, "spearman_rho");
    // rho = (12 * sum t*r_t - 3 m (m+1)^2) / (m (m^2 - 1)), exact in int64.
    std::int64_t sum_tr = 0;
    for (int t = 1; t <= m; ++t) {
        sum_tr += static_cast<std::int64_t>(t) * profile.r[t - 1];
    }
    const std::int64_t mm = m;
    const std::int64_t num = 12 * sum_tr - 3 * mm * (mm + 1) * (mm + 1);
    const std::int64_t den = mm * (mm * mm - 1);
    CorrValue out;
    out.method = Method::SpearmanRho;
    out.m = m;
    out.value = static_cast<double>(num) / static_cast<double>(den);
    out.null_mean = 0.0;
    out.null_var = 1.0 / (m - 1);
    return out;
}

namespace detail {

std::int64_t kendall_numerator(std::span<const std::int32_t> relative_ranks) {
    const std::size_t m = relative_ranks.size();
    std::vector<std::int32_t> a(relative_ranks.begin(), relative_ranks.end());
    std::vector<std::int32_t> tmp(m);
    const std::int64_t inv = count_inversions(a, tmp, 0, m);
    const std::int64_t pairs = static_cast<std::int64_t>(m) * (m - 1) / 2;
    return pairs - 2 * inv;
}

}  // namespace detail

CorrValue kendall_tau(const RankProfile& profile) {
    const int m = profile.m();
    require_length(m, 2, "kendall_tau");
    const std::int64_t pairs = static_cast<std::int64_t>(m) * (m - 1) / 2;
    CorrValue out;
    out.method = Method::KendallTau;
    out.m = m;
    out.value = static_cast<double>(detail::kendall_numerator(profile.r)) /
                static_cast<double>(pairs);
    out.null_mean = 0.0;
    out.null_var = 2.0 * (2.0 * m + 5.0) / (9.0 * m * (m - 1.0));
    return out;
}

CorrValue kendall_tau(const LagPairSample& pair) { return kendall_tau(relative_ranks(pair)); }

namespace detail {

// Evaluates the degenerate U-statistics from the relative-rank permutation by
// counting dominance configurations. One ascending sweep over x-rank
// positions maintains cum[y] = #{earlier points with y-rank <= y}; every
// needed subset count is then O(1) per point or per point pair:
//
//   Hoeffding D (order 5):   per point, from (#below in x, #below in y,
//                            #below in both).
//   tau* (order 4):          per unordered pair, from the counts of points
//                            jointly below / x-below-y-above both elements;
//                            quadruples whose x-split equals the y-split
//                            (concordant) or its reverse (discordant).
//   BKR R (order 6):         per ordered pair (x-threshold, y-threshold).
//
// Each statistic equals a fixed integer combination of those counts divided
// by the number of index subsets; the combinations below are validated
// against exhaustive kernel enumeration in the test suite.
DegenerateValues degenerate_stats(std::span<const std::int32_t> r, bool want_d, bool want_r,
                                  bool want_tau_star) {
    using i64 = std::int64_t;
    using i128 = __int128;
    const int m = static_cast<int>(r.size());

    std::vector<std::int32_t> cum(m + 1, 0);  // cum[y] = #{t < a : r[t] <= y}
    i128 n3 = 0, n4 = 0, n5 = 0;              // D
    i128 m4 = 0, m5 = 0, m6 = 0;              // R
    i128 sep2 = 0;                            // tau*: 2*(N_sep + N_rev)

    if (want_tau_star && !want_d && !want_r) {
        // Hot path of the permutation tests: tau* alone, lean inner loop.
        i64 total = 0;
        const std::int32_t* cm = cum.data();
        for (int a = 0; a < m; ++a) {
            const int u = r[a];
            const i64 rx = a;
            i64 local = 0;
            for (int b = a + 1; b < m; ++b) {
                const int v = r[b];
                const int lo = v < u ? v : u;
                const int hi = u + v - lo;
                const i64 g = cm[lo - 1];
                const i64 h = rx - cm[hi];
                local += g * (g - 1) + h * (h - 1);
            }
            total += local;
            for (int y = u; y <= m; ++y) ++cum[y];
        }
        const double subsets = binom(m, 4);
        DegenerateValues out{std::numeric_limits<double>::quiet_NaN(),
                             std::numeric_limits<double>::quiet_NaN(), 0.0};
        out.tau_star = (3.0 * (static_cast<double>(total) / 2.0) - subsets) / (2.0 * subsets);
        return out;
    }

    for (int a = 0; a < m; ++a) {
        const int u = r[a];
        const i64 rx = a;
        const i64 ry = u - 1;

        if (want_d) {
            const i64 l = cum[u - 1];
            n3 += l * (l - 1);
            n4 += l * ((rx - 1) * (ry - 1) - (l - 1));
            n5 += l * (l - 1) * (ry - 2) * (ry - 3) +
                  2 * l * (rx - l) * (ry - 1) * (ry - 2) +
                  (rx - l) * (rx - l - 1) * ry * (ry - 1);
        }

        if (want_tau_star) {
            for (int b = a + 1; b < m; ++b) {
                const int v = r[b];
                const int lo = std::min(u, v);
                const int hi = std::max(u, v);
                const i64 g = cum[lo - 1];
                const i64 h = rx - cum[hi];
                sep2 += g * (g - 1) + h * (h - 1);
            }
        }

        if (want_r) {
            // w = point at x-rank a+1 (y-rank u); s = point at x-rank b+1.
            for (int b = 0; b < m; ++b) {
                if (b == a) continue;
                const int v = r[b];
                const i64 c = cum[v - 1];
                const i64 xs_lt_xw = b < a ? 1 : 0;
                const i64 yw_lt_ys = u < v ? 1 : 0;
                const i64 rys = v - 1;
                m4 += c * (c - 1);
                m5 += c * ((rx - 1 - xs_lt_xw) * (rys - 1 - yw_lt_ys) - (c - 1));
                const i64 bx = rx - xs_lt_xw;
                const i64 by = rys - yw_lt_ys;
                m6 += c * (c - 1) * (by - 2) * (by - 3) +
                      2 * c * (bx - c) * (by - 1) * (by - 2) +
                      (bx - c) * (bx - c - 1) * by * (by - 1);
            }
        }

        for (int y = u; y <= m; ++y) ++cum[y];
    }

    const double qnan = std::numeric_limits<double>::quiet_NaN();
    DegenerateValues out{qnan, qnan, qnan};
    if (want_d) {
        const double md = m;
        const double num = 4.0 * (md - 3) * (md - 4) * static_cast<double>(n3) -
                           8.0 * (md - 4) * static_cast<double>(n4) +
                           4.0 * static_cast<double>(n5);
        out.d = num / (16.0 * binom(m, 5));
    }
    if (want_r) {
        const double md = m;
        const double num = 4.0 * (md - 4) * (md - 5) * static_cast<double>(m4) -
                           8.0 * (md - 5) * static_cast<double>(m5) +
                           4.0 * static_cast<double>(m6);
        out.r = num / (32.0 * binom(m, 6));
    }
    if (want_tau_star) {
        const double subsets = binom(m, 4);
        out.tau_star = (3.0 * (static_cast<double>(sep2) / 2.0) - subsets) / (2.0 * subsets);
    }
    return out;
}

}  // namespace detail

CorrValue hoeffding_d(const RankProfile& profile) {
    const int m = profile.m();
    require_length(m, 5, "hoeffding_d");
    CorrValue out;
    out.method = Method::HoeffdingD;
    out.m = m;
    out.value = detail::degenerate_stats(profile.r, true, false, false).d;
    out.null_mean = 0.0;
    out.null_var = degenerate_null_var(m, 5, 1.0 / 900.0);
    return out;
}

CorrValue hoeffding_d(const LagPairSample& pair) { return hoeffding_d(relative_ranks(pair)); }

CorrValue bkr_r(const RankProfile& profile) {
    const int m = profile.m();
    require_length(m, 6, "bkr_r");
    CorrValue out;
    out.method = Method::BkrR;
    out.m = m;
    out.value = detail::degenerate_stats(profile.r, false, true, false).r;
    out.null_mean = 0.0;
    out.null_var = degenerate_null_var(m, 6, 1.0 / 225.0);
    return out;
}

CorrValue bkr_r(const LagPairSample& pair) { return bkr_r(relative_ranks(pair)); }

CorrValue tau_star(const RankProfile& profile) {
    const int m = profile.m();
    require_length(m, 4, "tau_star");
    CorrValue out;
    out.method = Method::TauStar;
    out.m = m;
    out.value = detail::degenerate_stats(profile.r, false, false, true).tau_star;
    out.null_mean = 0.0;
    out.null_var = degenerate_null_var(m, 4, 1.0 / 100.0);
    return out;
}

CorrValue tau_star(const LagPairSample& pair) { return tau_star(relative_ranks(pair)); }

CorrValue chatterjee_xi(const RankProfile& profile) {
    const int m = profile.m();
    require_length(m, 3, "chatterjee_xi");
    std::int64_t gaps = 0;
    for (int s = 0; s + 1 < m; ++s) {
        gaps += std::abs(profile.r[s + 1] - profile.r[s]);
    }
    CorrValue out;
    out.method = Method::ChatterjeeXi;
    out.m = m;
    out.value = 1.0 - 3.0 * static_cast<double>(gaps) /
                          (static_cast<double>(m) * m - 1.0);
    out.null_mean = 0.0;
    out.null_var = 2.0 / (5.0 * m);
    return out;
}

CorrValue chatterjee_xi(const LagPairSample& pair) { return chatterjee_xi(relative_ranks(pair)); }

SlrMoments slr_null_moments(int m, const ScorePair& scores) {
    double sum_c = 0.0, sum_g = 0.0;
    std::vector<double> cs(m), gs(m);
    for (int t = 1; t <= m; ++t) {
        const double u = static_cast<double>(t) / (m + 1);
        cs[t - 1] = scores.f(u) / m;
        gs[t - 1] = scores.g(u);
        if (!std::isfinite(cs[t - 1]) || !std::isfinite(gs[t - 1])) {
            throw InvalidScore("simple_linear_rank: non-finite score evaluation");
        }
        sum_c += cs[t - 1];
        sum_g += gs[t - 1];
    }
    const double cbar = sum_c / m;
    const double gbar = sum_g / m;
    double ssc = 0.0, ssg = 0.0;
    for (int t = 0; t < m; ++t) {
        ssc += (cs[t] - cbar) * (cs[t] - cbar);
        ssg += (gs[t] - gbar) * (gs[t] - gbar);
    }
    SlrMoments moments;
    moments.mean = std::sqrt(static_cast<double>(m)) * gbar * sum_c;
    moments.var = static_cast<double>(m) / (m - 1) * ssg * ssc;
    if (!(moments.var > 0.0) || !std::isfinite(moments.var)) {
        throw InvalidScore("simple_linear_rank: degenerate scores (zero null variance)");
    }
    return moments;
}

CorrValue simple_linear_rank(const RankProfile& profile, const ScorePair& scores) {
    const int m = profile.m();
    require_length(m, 3, "simple_linear_rank");
    const SlrMoments moments = slr_null_moments(m, scores);
    double v = 0.0;
    for (int t = 1; t <= m; ++t) {
        const double c = scores.f(static_cast<double>(t) / (m + 1)) / m;
        const double g = scores.g(static_cast<double>(profile.r[t - 1]) / (m + 1));
        if (!std::isfinite(c) || !std::isfinite(g)) {
            throw InvalidScore("simple_linear_rank: non-finite score evaluation");
        }
        v += c * g;
    }
    CorrValue out;
    out.method = Method::GenericSLR;
    out.m = m;
    out.value = std::sqrt(static_cast<double>(m)) * v;
    out.null_mean = moments.mean;
    out.null_var = moments.var;
    return out;
}

}  // namespace wnrank
