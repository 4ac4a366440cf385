#include <doctest.h>

#include <cmath>
#include <cstring>
#include <numeric>
#include <random>
#include <vector>

#include "wnrank/max_test.hpp"
#include "wnrank/rng.hpp"
#include "wnrank/scan.hpp"
#include "wnrank/simgen.hpp"

using namespace wnrank;

namespace {

SeriesPanel gaussian_panel(int n, int p, std::uint64_t seed) {
    NullModelSpec spec;
    spec.innovation = Innovation::Gaussian;
    spec.mixing = Mixing::Toeplitz;
    spec.n = n;
    spec.p = p;
    spec.seed = seed;
    return gen_null(spec);
}

bool outcomes_identical(const TestOutcome& a, const TestOutcome& b) {
    return std::memcmp(&a.statistic, &b.statistic, sizeof(double)) == 0 &&
           std::memcmp(&a.p_value, &b.p_value, sizeof(double)) == 0 &&
           a.reject == b.reject && a.argmax_i == b.argmax_i && a.argmax_j == b.argmax_j &&
           a.argmax_k == b.argmax_k;
}

}  // namespace

TEST_CASE("pair_scan cell count is K p^2") {
    const SeriesPanel panel = gaussian_panel(40, 2, 1);
    const PairScan scan = pair_scan(panel, 1, Method::SpearmanRho);
    CHECK(scan.N() == 4);
    CHECK(scan.values.size() == 4);
    const PairScan scan2 = pair_scan(panel, 3, Method::SpearmanRho);
    CHECK(scan2.N() == 12);
}

TEST_CASE("pair_scan validates the lag budget") {
    const SeriesPanel panel = gaussian_panel(12, 2, 2);
    CHECK_NOTHROW(pair_scan(panel, 4, Method::SpearmanRho));
    CHECK_THROWS_AS(pair_scan(panel, 5, Method::SpearmanRho), IndexError);
    CHECK_THROWS_AS(pair_scan(panel, 0, Method::SpearmanRho), IndexError);
}

TEST_CASE("scan cells match the per-pair statistics") {
    const SeriesPanel panel = gaussian_panel(50, 3, 3);
    const int K = 2;
    const Method methods[] = {Method::SpearmanRho, Method::KendallTau,  Method::HoeffdingD,
                              Method::BkrR,        Method::ChatterjeeXi, Method::TauStar};
    const auto scans = pair_scan_multi(panel, K, methods);

    for (int k = 1; k <= K; ++k) {
        const int m = 50 - k;
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                const LagPairSample pair = lag_pair(panel, i, j, k);
                const RankProfile profile = relative_ranks(pair);

                const double rho = spearman_rho(profile).value;
                CHECK(scans[0].at(k, i, j) ==
                      doctest::Approx(std::sqrt(static_cast<double>(m)) * rho).epsilon(1e-12));

                const double tau = kendall_tau(profile).value;
                const double tau_scale =
                    std::sqrt(9.0 * m * (m - 1.0) / (2.0 * (2.0 * m + 5.0)));
                CHECK(scans[1].at(k, i, j) == doctest::Approx(tau_scale * tau).epsilon(1e-12));

                const GumbelLaw law_d = gumbel_law_for(Method::HoeffdingD);
                const double mult_d = (m - 1.0) / (law_d.lambda1 * 10.0);
                CHECK(scans[2].at(k, i, j) ==
                      doctest::Approx(mult_d * hoeffding_d(profile).value).epsilon(1e-12));

                const GumbelLaw law_r = gumbel_law_for(Method::BkrR);
                const double mult_r = (m - 1.0) / (law_r.lambda1 * 15.0);
                CHECK(scans[3].at(k, i, j) ==
                      doctest::Approx(mult_r * bkr_r(profile).value).epsilon(1e-12));

                // Chatterjee cell uses the (m+1)-based normalization of the
                // max statistic, not the plain m-point coefficient.
                std::int64_t gaps = 0;
                for (int t = 0; t + 1 < m; ++t) gaps += std::abs(profile.r[t + 1] - profile.r[t]);
                const double xi_big =
                    1.0 - 3.0 * gaps / ((m + 1.0) * (m + 1.0) - 1.0);
                CHECK(scans[4].at(k, i, j) ==
                      doctest::Approx(std::sqrt(5.0 * (m + 1.0) / 2.0) * xi_big).epsilon(1e-12));

                const GumbelLaw law_t = gumbel_law_for(Method::TauStar);
                const double mult_t = (m - 1.0) / (law_t.lambda1 * 6.0);
                CHECK(scans[5].at(k, i, j) ==
                      doctest::Approx(mult_t * tau_star(profile).value).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("max_test centering on an all-zero scan") {
    PairScan scan;
    scan.method = Method::SpearmanRho;
    scan.n = 100;
    scan.p = 30;
    scan.K = 2;
    scan.values.assign(1800, 0.0);
    const TestOutcome outcome = max_test(scan, 0.05);
    // Independent arithmetic: -2 log 1800 + log log 1800.
    const double expected = -2.0 * std::log(1800.0) + std::log(std::log(1800.0));
    CHECK(outcome.statistic == doctest::Approx(expected).epsilon(1e-12));
    CHECK(outcome.statistic == doctest::Approx(-12.9768).epsilon(1e-4));
    CHECK_FALSE(outcome.reject);
    CHECK(outcome.p_value > 0.99);
}

TEST_CASE("max_test argmax ties resolve to the smallest triple") {
    PairScan scan;
    scan.method = Method::SpearmanRho;
    scan.n = 50;
    scan.p = 2;
    scan.K = 2;
    scan.values.assign(8, 1.0);
    const TestOutcome outcome = max_test(scan, 0.05);
    CHECK(outcome.argmax_i == 0);
    CHECK(outcome.argmax_j == 0);
    CHECK(outcome.argmax_k == 1);
}

TEST_CASE("max_test rejects bad alpha and empty scans") {
    PairScan scan;
    scan.method = Method::SpearmanRho;
    CHECK_THROWS_AS(max_test(scan, 0.05), InvalidInput);
    scan.n = 50;
    scan.p = 1;
    scan.K = 1;
    scan.values.assign(1, 0.0);
    CHECK_THROWS_AS(max_test(scan, 0.0), InvalidAlpha);
    CHECK_THROWS_AS(max_test(scan, 1.0), InvalidAlpha);
}

TEST_CASE("degenerate max_test applies the pi^4/36 shift") {
    PairScan scan;
    scan.method = Method::HoeffdingD;
    scan.n = 100;
    scan.p = 30;
    scan.K = 2;
    scan.values.assign(1800, 0.0);
    const TestOutcome outcome = max_test(scan, 0.05);
    const double pi4 = std::pow(std::numbers::pi, 4);
    const double expected = -2.0 * std::log(1800.0) + std::log(std::log(1800.0)) + pi4 / 36.0;
    CHECK(outcome.statistic == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("planted lagged copy drives the argmax") {
    // Column 1 equals column 0 shifted by one step: cell (0, 1, k=1) must win
    // essentially always.
    auto engine = make_engine(404);
    std::normal_distribution<double> normal;
    int hits = 0;
    for (int rep = 0; rep < 100; ++rep) {
        const int n = 60, p = 4;
        std::vector<double> cm(static_cast<std::size_t>(n) * p);
        for (auto& v : cm) v = normal(engine);
        for (int t = 1; t < n; ++t) {
            cm[static_cast<std::size_t>(1) * n + t] = cm[t - 1];  // col 1 = lag-1 copy of col 0
        }
        const SeriesPanel panel(n, p, std::move(cm));
        const TestOutcome outcome = max_test(pair_scan(panel, 2, Method::SpearmanRho), 0.05);
        if (outcome.argmax_i == 0 && outcome.argmax_j == 1 && outcome.argmax_k == 1) ++hits;
    }
    CHECK(hits >= 95);
}

TEST_CASE("threshold consistency: reject iff p-value <= alpha") {
    auto engine = make_engine(505);
    std::normal_distribution<double> normal;
    std::uniform_real_distribution<double> alpha_draw(0.01, 0.3);
    for (int rep = 0; rep < 1000; ++rep) {
        PairScan scan;
        scan.method = rep % 2 == 0 ? Method::SpearmanRho : Method::TauStar;
        scan.n = 80;
        scan.p = 3;
        scan.K = 2;
        scan.values.resize(18);
        for (auto& v : scan.values) v = normal(engine) * 3.0;
        const double alpha = alpha_draw(engine);
        const TestOutcome outcome = max_test(scan, alpha);
        CHECK(outcome.reject == (outcome.p_value <= alpha));
        CHECK(outcome.reject == (outcome.statistic >= outcome.threshold));
    }
}

TEST_CASE("scan outcomes are invariant under monotone column transforms") {
    const SeriesPanel panel = gaussian_panel(80, 5, 606);
    const int n = panel.n(), p = panel.p();
    std::vector<double> transformed(panel.data());
    for (int c = 0; c < p; ++c) {
        for (int t = 0; t < n; ++t) {
            double& v = transformed[static_cast<std::size_t>(c) * n + t];
            switch (c % 3) {
                case 0: v = std::exp(v); break;
                case 1: v = v * v * v; break;
                default: v = 2.0 * v + 5.0; break;
            }
        }
    }
    const SeriesPanel tpanel(n, p, std::move(transformed));

    for (Method method : {Method::SpearmanRho, Method::KendallTau, Method::HoeffdingD,
                          Method::BkrR, Method::TauStar, Method::ChatterjeeXi}) {
        const TestOutcome a = max_test(pair_scan(panel, 2, method), 0.05);
        const TestOutcome b = max_test(pair_scan(tpanel, 2, method), 0.05);
        CHECK(outcomes_identical(a, b));
    }
}

TEST_CASE("scan is deterministic across thread counts") {
    const SeriesPanel panel = gaussian_panel(70, 6, 707);
    for (Method method : {Method::SpearmanRho, Method::TauStar}) {
        const PairScan s1 = pair_scan(panel, 2, method, 1);
        const PairScan s4 = pair_scan(panel, 2, method, 4);
        CHECK(s1.values == s4.values);
    }
}

TEST_CASE("SLR scan standardization matches Spearman's z") {
    ScorePair scores;
    scores.f = [](double u) { return u - 0.5; };
    scores.g = [](double u) { return u - 0.5; };
    const SeriesPanel panel = gaussian_panel(45, 3, 808);
    const PairScan slr = pair_scan_slr(panel, 2, scores);
    const PairScan rho = pair_scan(panel, 2, Method::SpearmanRho);
    for (std::size_t c = 0; c < slr.values.size(); ++c) {
        const int k = static_cast<int>(c / 9) + 1;
        const int m = 45 - k;
        // z_slr = sqrt(m-1) rho, z_rho = sqrt(m) rho.
        const double expected = rho.values[c] / std::sqrt(static_cast<double>(m)) *
                                std::sqrt(m - 1.0);
        CHECK(slr.values[c] == doctest::Approx(expected).epsilon(1e-9));
    }
}

TEST_CASE("tie warnings surface through the scan") {
    std::vector<double> cm(30, 0.0);
    for (int t = 0; t < 15; ++t) cm[t] = t;  // column 0 distinct
    for (int t = 15; t < 30; ++t) cm[t] = (t - 15) / 2;  // column 1 has ties
    const SeriesPanel panel(15, 2, cm);
    Warnings warnings;
    pair_scan(panel, 1, Method::SpearmanRho, 1, &warnings);
    REQUIRE(warnings.size() == 1);
    CHECK(warnings[0].find("ties") != std::string::npos);
    CHECK(warnings[0].find("2") != std::string::npos);
}
