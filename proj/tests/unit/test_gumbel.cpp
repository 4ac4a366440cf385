#include <doctest.h>

#include <cmath>
#include <numbers>

#include "wnrank/gumbel.hpp"

using namespace wnrank;

namespace {

constexpr double kPi = std::numbers::pi;

// Independent high-precision evaluation of the simple-law quantile.
long double simple_quantile_ld(long double alpha) {
    const long double pi_ld = std::numbers::pi_v<long double>;
    return -std::log(pi_ld) - 2.0L * std::log(std::log(1.0L / (1.0L - alpha)));
}

}  // namespace

TEST_CASE("simple-law quantile at alpha = 0.05") {
    const double q = gumbel_quantile(0.05);
    CHECK(q == doctest::Approx(static_cast<double>(simple_quantile_ld(0.05L))).epsilon(1e-10));
    CHECK(q == doctest::Approx(4.7957).epsilon(1e-4));
}

TEST_CASE("degenerate-law quantile equals log(kappa^2/pi) + simple part") {
    // q_deg(alpha) = q_simple(alpha) + 2 log kappa.
    const GumbelLaw law = gumbel_law_for(Method::HoeffdingD);
    const double q = gumbel_quantile(0.05, law);
    const double expected =
        static_cast<double>(simple_quantile_ld(0.05L)) + 2.0 * std::log(law.kappa);
    CHECK(q == doctest::Approx(expected).epsilon(1e-10));
}

TEST_CASE("quantile is monotone decreasing in alpha and unbounded below") {
    double prev = gumbel_quantile(1e-6);
    for (double alpha : {1e-4, 0.01, 0.05, 0.2, 0.5, 0.9, 0.999, 1.0 - 1e-9}) {
        const double q = gumbel_quantile(alpha);
        CHECK(q < prev);
        prev = q;
    }
    // The limit as alpha -> 1 is -infinity (approached logarithmically).
    CHECK(gumbel_quantile(1.0 - 1e-12) < gumbel_quantile(0.5) - 5.0);
    CHECK_THROWS_AS(gumbel_quantile(0.0), InvalidAlpha);
    CHECK_THROWS_AS(gumbel_quantile(1.0), InvalidAlpha);
    CHECK_THROWS_AS(gumbel_quantile(1.5), InvalidAlpha);
}

TEST_CASE("kappa_d value and convergence") {
    CHECK(kappa_d() == doctest::Approx(2.467).epsilon(0.001 / 2.467));

    // Single-factor product: sqrt(2 * (pi/2)/sin(pi/2)) = sqrt(pi).
    CHECK(kappa_d_truncated(1, false) == doctest::Approx(std::sqrt(kPi)).epsilon(1e-12));

    // With the tail correction, truncation level barely matters.
    const double k4 = kappa_d_truncated(10000, true);
    const double k5 = kappa_d_truncated(100000, true);
    const double k6 = kappa_d_truncated(1000000, true);
    CHECK(std::abs(k5 - k4) < 1e-6);
    CHECK(std::abs(k6 - k5) < 1e-6);
    // Without the correction the 1e4 truncation is visibly off.
    CHECK(std::abs(kappa_d_truncated(10000, false) - k5) > 1e-5);
}

TEST_CASE("degenerate centering ratio is pi^4/36 exactly") {
    const double pi4 = kPi * kPi * kPi * kPi;
    for (Method m : {Method::HoeffdingD, Method::BkrR, Method::TauStar}) {
        const GumbelLaw law = gumbel_law_for(m);
        CHECK(law.capital_lambda / law.lambda1 == doctest::Approx(pi4 / 36.0).epsilon(1e-12));
    }
}

TEST_CASE("degenerate scale multipliers follow the 30/90/54 pattern") {
    const double pi4 = kPi * kPi * kPi * kPi;
    const auto multiplier = [&](Method m, double pairs) {
        const GumbelLaw law = gumbel_law_for(m);
        return 1.0 / (law.lambda1 * pairs);
    };
    CHECK(multiplier(Method::HoeffdingD, 10.0) == doctest::Approx(pi4 / 30.0).epsilon(1e-12));
    CHECK(multiplier(Method::BkrR, 15.0) == doctest::Approx(pi4 / 90.0).epsilon(1e-12));
    CHECK(multiplier(Method::TauStar, 6.0) == doctest::Approx(pi4 / 54.0).epsilon(1e-12));
}

TEST_CASE("p-value and quantile are inverse") {
    for (Method m : {Method::SpearmanRho, Method::HoeffdingD}) {
        const GumbelLaw law = gumbel_law_for(m);
        for (double alpha : {0.01, 0.05, 0.1, 0.5}) {
            const double q = gumbel_quantile(alpha, law);
            CHECK(gumbel_p_value(q, law) == doctest::Approx(alpha).epsilon(1e-10));
        }
    }
}

TEST_CASE("p-value limits and monotonicity") {
    CHECK(gumbel_p_value(1e308) == 0.0);
    CHECK(gumbel_p_value(-1400.0) == 1.0);
    double prev = 1.0;
    for (double y = -20.0; y <= 20.0; y += 0.5) {
        const double p = gumbel_p_value(y);
        CHECK(p <= prev);
        CHECK(p >= 0.0);
        CHECK(p <= 1.0);
        prev = p;
    }
}

TEST_CASE("p-value at the distribution median is one half") {
    // Root-find the median of the simple law, then check p_value there.
    double lo = -10.0, hi = 10.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double cdf = std::exp(-std::exp(-mid / 2.0) / std::sqrt(kPi));
        (cdf < 0.5 ? lo : hi) = mid;
    }
    const double median = 0.5 * (lo + hi);
    CHECK(gumbel_p_value(median) == doctest::Approx(0.5).epsilon(1e-9));
    // Closed form: median solves exp(-y/2) = sqrt(pi) log 2.
    CHECK(median ==
          doctest::Approx(-2.0 * std::log(std::sqrt(kPi) * std::log(2.0))).epsilon(1e-9));
}

TEST_CASE("family mapping") {
    CHECK(is_degenerate(Method::HoeffdingD));
    CHECK(is_degenerate(Method::BkrR));
    CHECK(is_degenerate(Method::TauStar));
    CHECK_FALSE(is_degenerate(Method::SpearmanRho));
    CHECK_FALSE(is_degenerate(Method::KendallTau));
    CHECK_FALSE(is_degenerate(Method::ChatterjeeXi));
    CHECK_FALSE(is_degenerate(Method::GenericSLR));

    const GumbelLaw simple = gumbel_law_for(Method::KendallTau);
    CHECK(simple.mu1 == 1);
    CHECK(simple.kappa == 1.0);
}
