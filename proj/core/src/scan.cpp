#include "wnrank/scan.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "wnrank/gumbel.hpp"
#include "wnrank/parallel.hpp"

namespace wnrank {

namespace {

struct MethodPlan {
    bool rho = false;
    bool tau = false;
    bool xi = false;
    bool d = false;
    bool r = false;
    bool tau_star = false;
};

double binom(int n, int k) {
    double v = 1.0;
    for (int i = 1; i <= k; ++i) v *= static_cast<double>(n - k + i) / i;
    return v;
}

int kernel_order(Method method) {
    switch (method) {
        case Method::HoeffdingD: return 5;
        case Method::BkrR: return 6;
        case Method::TauStar: return 4;
        default: return 2;
    }
}

// Per-lag standardization constants for one method.
struct LagScale {
    double factor = 1.0;   // multiplies the raw statistic
    double xi_den = 0.0;   // Chatterjee denominator
};

LagScale lag_scale(Method method, int m) {
    LagScale s;
    const double md = m;
    switch (method) {
        case Method::SpearmanRho:
            s.factor = std::sqrt(md);
            break;
        case Method::KendallTau:
            s.factor = std::sqrt(9.0 * md * (md - 1.0) / (2.0 * (2.0 * md + 5.0)));
            break;
        case Method::ChatterjeeXi:
            s.factor = std::sqrt(5.0 * (md + 1.0) / 2.0);
            s.xi_den = (md + 1.0) * (md + 1.0) - 1.0;
            break;
        case Method::HoeffdingD:
        case Method::BkrR:
        case Method::TauStar: {
            const GumbelLaw law = gumbel_law_for(method);
            s.factor = (md - 1.0) / (law.lambda1 * binom(kernel_order(method), 2));
            break;
        }
        case Method::GenericSLR:
            break;
    }
    return s;
}

void validate_scan_args(const SeriesPanel& panel, int K) {
    if (K < 1) {
        throw IndexError("max lag K must be >= 1, got " + std::to_string(K));
    }
    if (panel.n() - K < kMinPairLength) {
        throw IndexError("panel too short for K=" + std::to_string(K) + ": n=" +
                         std::to_string(panel.n()) + " leaves fewer than " +
                         std::to_string(kMinPairLength) + " aligned points");
    }
}

// Ranks of every column over the x-window [0, n-k) and y-window [k, n) for
// each lag, shared by all (i, j) pairs of that lag.
struct RankCache {
    // [k-1][column] -> 1-based ranks
    std::vector<std::vector<std::vector<std::int32_t>>> x;
    std::vector<std::vector<std::vector<std::int32_t>>> y;
    bool ties = false;
};

RankCache build_rank_cache(const SeriesPanel& panel, int K) {
    RankCache cache;
    const int p = panel.p();
    const int n = panel.n();
    cache.x.resize(K);
    cache.y.resize(K);
    for (int k = 1; k <= K; ++k) {
        const int m = n - k;
        cache.x[k - 1].resize(p);
        cache.y[k - 1].resize(p);
        for (int c = 0; c < p; ++c) {
            RankVector rx = ranks(panel.col(c).first(m));
            RankVector ry = ranks(panel.col(c).subspan(k, m));
            cache.ties = cache.ties || rx.tie_flag || ry.tie_flag;
            cache.x[k - 1][c] = std::move(rx.r);
            cache.y[k - 1][c] = std::move(ry.r);
        }
    }
    return cache;
}

void note_ties(const SeriesPanel& panel, const RankCache& cache, Warnings* warnings) {
    if (!warnings || !cache.ties) return;
    std::string cols;
    for (int c : panel.tied_columns()) {
        if (!cols.empty()) cols += ", ";
        cols += panel.column_label(c);
    }
    warnings->push_back("ties detected in column(s) " + cols +
                        "; ranks use stable original-order tie-breaking");
}

}  // namespace

std::vector<PairScan> pair_scan_multi(const SeriesPanel& panel, int K,
                                      std::span<const Method> methods, int threads,
                                      Warnings* warnings) {
    validate_scan_args(panel, K);
    const int n = panel.n();
    const int p = panel.p();

    MethodPlan plan;
    std::vector<PairScan> scans;
    scans.reserve(methods.size());
    for (Method method : methods) {
        if (method == Method::GenericSLR) {
            throw InvalidInput("pair_scan_multi: use pair_scan_slr for score-based statistics");
        }
        switch (method) {
            case Method::SpearmanRho: plan.rho = true; break;
            case Method::KendallTau: plan.tau = true; break;
            case Method::ChatterjeeXi: plan.xi = true; break;
            case Method::HoeffdingD: plan.d = true; break;
            case Method::BkrR: plan.r = true; break;
            case Method::TauStar: plan.tau_star = true; break;
            default: break;
        }
        PairScan scan;
        scan.method = method;
        scan.n = n;
        scan.p = p;
        scan.K = K;
        scan.values.assign(static_cast<std::size_t>(K) * p * p, 0.0);
        scans.push_back(std::move(scan));
    }

    const RankCache cache = build_rank_cache(panel, K);
    note_ties(panel, cache, warnings);

    // Standardization constants per (method, lag).
    std::vector<std::vector<LagScale>> scale(methods.size(), std::vector<LagScale>(K));
    for (std::size_t s = 0; s < methods.size(); ++s) {
        for (int k = 1; k <= K; ++k) {
            scale[s][k - 1] = lag_scale(methods[s], n - k);
        }
    }

    const std::int64_t cells = static_cast<std::int64_t>(K) * p * p;
    const bool need_degenerate = plan.d || plan.r || plan.tau_star;
    parallel_for(cells, resolve_threads(threads), [&](std::int64_t begin, std::int64_t end, int) {
        std::vector<std::int32_t> rel;
        for (std::int64_t cell = begin; cell < end; ++cell) {
            const int k = static_cast<int>(cell / (static_cast<std::int64_t>(p) * p)) + 1;
            const int rest = static_cast<int>(cell % (static_cast<std::int64_t>(p) * p));
            const int i = rest / p;
            const int j = rest % p;
            const int m = n - k;

            const auto& qx = cache.x[k - 1][i];
            const auto& qy = cache.y[k - 1][j];
            rel.resize(m);
            for (int t = 0; t < m; ++t) rel[qx[t] - 1] = qy[t];

            detail::DegenerateValues deg;
            if (need_degenerate) {
                deg = detail::degenerate_stats(rel, plan.d, plan.r, plan.tau_star);
            }

            for (std::size_t s = 0; s < methods.size(); ++s) {
                const LagScale& sc = scale[s][k - 1];
                double z = 0.0;
                switch (methods[s]) {
                    case Method::SpearmanRho: {
                        std::int64_t sum_tr = 0;
                        for (int t = 1; t <= m; ++t) {
                            sum_tr += static_cast<std::int64_t>(t) * rel[t - 1];
                        }
                        const std::int64_t mm = m;
                        const double rho =
                            static_cast<double>(12 * sum_tr - 3 * mm * (mm + 1) * (mm + 1)) /
                            static_cast<double>(mm * (mm * mm - 1));
                        z = sc.factor * rho;
                        break;
                    }
                    case Method::KendallTau: {
                        const std::int64_t pairs = static_cast<std::int64_t>(m) * (m - 1) / 2;
                        const double tau = static_cast<double>(detail::kendall_numerator(rel)) /
                                           static_cast<double>(pairs);
                        z = sc.factor * tau;
                        break;
                    }
                    case Method::ChatterjeeXi: {
                        std::int64_t gaps = 0;
                        for (int t = 0; t + 1 < m; ++t) gaps += std::abs(rel[t + 1] - rel[t]);
                        const double xi = 1.0 - 3.0 * static_cast<double>(gaps) / sc.xi_den;
                        z = sc.factor * xi;
                        break;
                    }
                    case Method::HoeffdingD: z = sc.factor * deg.d; break;
                    case Method::BkrR: z = sc.factor * deg.r; break;
                    case Method::TauStar: z = sc.factor * deg.tau_star; break;
                    case Method::GenericSLR: break;
                }
                scans[s].values[cell] = z;
            }
        }
    });
    return scans;
}

PairScan pair_scan(const SeriesPanel& panel, int K, Method method, int threads,
                   Warnings* warnings) {
    const Method methods[1] = {method};
    auto scans = pair_scan_multi(panel, K, methods, threads, warnings);
    return std::move(scans.front());
}

PairScan pair_scan_slr(const SeriesPanel& panel, int K, const ScorePair& scores, int threads,
                       Warnings* warnings) {
    validate_scan_args(panel, K);
    scores.validate();
    const int n = panel.n();
    const int p = panel.p();

    PairScan scan;
    scan.method = Method::GenericSLR;
    scan.n = n;
    scan.p = p;
    scan.K = K;
    scan.values.assign(static_cast<std::size_t>(K) * p * p, 0.0);

    const RankCache cache = build_rank_cache(panel, K);
    note_ties(panel, cache, warnings);

    // Per-lag: regression constants, score-by-rank lookup, exact moments.
    struct SlrLag {
        std::vector<double> c;        // c_t = f(t/(m+1))/m
        std::vector<double> g_rank;   // g(v/(m+1)) for v = 1..m
        double mean = 0.0;
        double sd = 1.0;
    };
    std::vector<SlrLag> lags(K);
    for (int k = 1; k <= K; ++k) {
        const int m = n - k;
        SlrLag& lag = lags[k - 1];
        lag.c.resize(m);
        lag.g_rank.resize(m);
        for (int t = 1; t <= m; ++t) {
            const double u = static_cast<double>(t) / (m + 1);
            lag.c[t - 1] = scores.f(u) / m;
            lag.g_rank[t - 1] = scores.g(u);
        }
        const SlrMoments moments = slr_null_moments(m, scores);
        lag.mean = moments.mean;
        lag.sd = std::sqrt(moments.var);
    }

    const std::int64_t cells = static_cast<std::int64_t>(K) * p * p;
    parallel_for(cells, resolve_threads(threads), [&](std::int64_t begin, std::int64_t end, int) {
        std::vector<std::int32_t> rel;
        for (std::int64_t cell = begin; cell < end; ++cell) {
            const int k = static_cast<int>(cell / (static_cast<std::int64_t>(p) * p)) + 1;
            const int rest = static_cast<int>(cell % (static_cast<std::int64_t>(p) * p));
            const int i = rest / p;
            const int j = rest % p;
            const int m = n - k;
            const SlrLag& lag = lags[k - 1];

            const auto& qx = cache.x[k - 1][i];
            const auto& qy = cache.y[k - 1][j];
            rel.resize(m);
            for (int t = 0; t < m; ++t) rel[qx[t] - 1] = qy[t];

            double v = 0.0;
            for (int t = 0; t < m; ++t) {
                v += lag.c[t] * lag.g_rank[rel[t] - 1];
            }
            v *= std::sqrt(static_cast<double>(m));
            scan.values[cell] = (v - lag.mean) / lag.sd;
        }
    });
    return scan;
}

}  // namespace wnrank
