#include "wnrank/lstat.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "wnrank/parallel.hpp"
#include "wnrank/rng.hpp"

namespace wnrank {

void LStatConfig::validate(std::int64_t n_cells) const {
    if (L < 1 || L > n_cells) {
        throw InvalidL("L must lie in {1, ..., " + std::to_string(n_cells) + "}, got " +
                       std::to_string(L));
    }
    if (B < 100) {
        throw InvalidInput("permutation count B must be >= 100, got " + std::to_string(B));
    }
    if (!(alpha > 0.0) || !(alpha < 1.0)) {
        throw InvalidAlpha("alpha must lie in (0, 1), got " + std::to_string(alpha));
    }
}

double l_statistic(const PairScan& scan, int L) {
    const std::int64_t n_cells = scan.N();
    if (L < 1 || L > n_cells) {
        throw InvalidL("L must lie in {1, ..., " + std::to_string(n_cells) + "}, got " +
                       std::to_string(L));
    }
    std::vector<double> magnitudes(scan.values.size());
    for (std::size_t c = 0; c < magnitudes.size(); ++c) {
        magnitudes[c] = std::abs(scan.values[c]);
    }
    std::partial_sort(magnitudes.begin(), magnitudes.begin() + L, magnitudes.end(),
                      std::greater<double>());
    double sum = 0.0;
    for (int l = 0; l < L; ++l) sum += magnitudes[l];
    return sum;
}

SeriesPanel permute_panel(const SeriesPanel& panel, std::span<const std::int32_t> perm) {
    const int n = panel.n();
    const int p = panel.p();
    if (static_cast<int>(perm.size()) != n) {
        throw InvalidInput("permutation length does not match panel length");
    }
    std::vector<double> data(static_cast<std::size_t>(n) * p);
    for (int c = 0; c < p; ++c) {
        auto src = panel.col(c);
        double* dst = data.data() + static_cast<std::size_t>(c) * n;
        for (int t = 0; t < n; ++t) dst[t] = src[perm[t]];
    }
    return SeriesPanel(n, p, std::move(data), panel.column_names());
}

SeriesPanel permute_panel(const SeriesPanel& panel, std::uint64_t seed) {
    std::vector<std::int32_t> perm(panel.n());
    std::iota(perm.begin(), perm.end(), 0);
    auto engine = make_engine(seed);
    std::shuffle(perm.begin(), perm.end(), engine);
    return permute_panel(panel, perm);
}

namespace {

std::vector<double> top_magnitudes(const PairScan& scan, int max_l) {
    std::vector<double> mags(scan.values.size());
    for (std::size_t c = 0; c < mags.size(); ++c) mags[c] = std::abs(scan.values[c]);
    const int keep = std::min<std::int64_t>(max_l, mags.size());
    std::partial_sort(mags.begin(), mags.begin() + keep, mags.end(), std::greater<double>());
    mags.resize(keep);
    return mags;
}

}  // namespace

std::vector<TestOutcome> permutation_test_multi(const SeriesPanel& panel, Method method,
                                                std::span<const int> Ls, int B, double alpha,
                                                std::uint64_t seed, int K, int threads,
                                                Warnings* warnings) {
    if (panel.n() < 10) {
        throw InvalidInput("permutation test needs n >= 10, got n=" +
                           std::to_string(panel.n()));
    }
    if (Ls.empty()) {
        throw InvalidL("no L values given");
    }
    PairScan observed_scan = pair_scan(panel, K, method, threads, warnings);
    const std::int64_t n_cells = observed_scan.N();
    int max_l = 0;
    for (int L : Ls) {
        LStatConfig probe{L, method, B, alpha, seed};
        probe.validate(n_cells);
        max_l = std::max(max_l, L);
    }

    // Observed partial sums of the top |z| values, one prefix per L.
    const std::vector<double> observed_top = top_magnitudes(observed_scan, max_l);
    std::vector<double> observed(Ls.size());
    for (std::size_t s = 0; s < Ls.size(); ++s) {
        observed[s] = std::accumulate(observed_top.begin(), observed_top.begin() + Ls[s], 0.0);
    }

    // Permutation replicates, each on its own derived stream so the result
    // does not depend on the worker schedule.
    std::vector<std::vector<double>> permuted(Ls.size(), std::vector<double>(B));
    parallel_for(B, resolve_threads(threads), [&](std::int64_t begin, std::int64_t end, int) {
        for (std::int64_t b = begin; b < end; ++b) {
            const std::uint64_t stream = derive_seed(seed, {0x7065726dULL, static_cast<std::uint64_t>(b)});
            SeriesPanel shuffled = permute_panel(panel, stream);
            PairScan scan = pair_scan(shuffled, K, method, 1);
            const std::vector<double> top = top_magnitudes(scan, max_l);
            for (std::size_t s = 0; s < Ls.size(); ++s) {
                permuted[s][b] =
                    std::accumulate(top.begin(), top.begin() + Ls[s], 0.0);
            }
        }
    });

    std::vector<TestOutcome> outcomes(Ls.size());
    for (std::size_t s = 0; s < Ls.size(); ++s) {
        int count_ge = 0;
        for (double v : permuted[s]) {
            if (v >= observed[s]) ++count_ge;
        }
        const double p_value = static_cast<double>(1 + count_ge) / (B + 1);

        // Reported threshold: the smallest permuted value whose attainment
        // would still reject; boundary ties resolve through the count rule.
        std::vector<double> sorted = permuted[s];
        std::sort(sorted.begin(), sorted.end());
        const int admissible = static_cast<int>(std::floor(alpha * (B + 1))) - 1;
        const int idx = std::clamp(B - 1 - admissible, 0, B - 1);
        TestOutcome& out = outcomes[s];
        out.method = method;
        out.alpha = alpha;
        out.statistic = observed[s];
        out.threshold = sorted[idx];
        out.p_value = p_value;
        out.reject = p_value <= alpha;
        out.n = panel.n();
        out.p = panel.p();
        out.K = K;
        out.law = gumbel_law_for(method);
        out.permutations = B;
        out.L = Ls[s];

        // argmax of the observed scan (largest |z| cell) for reporting.
        const TestOutcome max_info = max_test(observed_scan, alpha);
        out.argmax_i = max_info.argmax_i;
        out.argmax_j = max_info.argmax_j;
        out.argmax_k = max_info.argmax_k;
    }
    return outcomes;
}

TestOutcome permutation_test(const SeriesPanel& panel, const LStatConfig& config, int K,
                             int threads, Warnings* warnings) {
    const int ls[1] = {config.L};
    auto outcomes = permutation_test_multi(panel, config.method, ls, config.B, config.alpha,
                                           config.seed, K, threads, warnings);
    return outcomes.front();
}

}  // namespace wnrank
