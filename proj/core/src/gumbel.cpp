#include "wnrank/gumbel.hpp"

#include <cmath>
#include <numbers>

#include "wnrank/errors.hpp"

namespace wnrank {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPi4 = kPi * kPi * kPi * kPi;

// Largest eigenvalue and eigenvalue sum of the order-2 projection for each
// degenerate kernel. The three sequences are proportional (factors 1, 2, 3),
// so they share the spectral constant kappa_d and the ratio
// capital_lambda / lambda1 = pi^4 / 36.
constexpr double kLambda1D = 3.0 / kPi4;
constexpr double kCapitalLambdaD = 1.0 / 12.0;

}  // namespace

double kappa_d_truncated(long terms, bool tail_correction) {
    // log of the product sum_{n=2}^{N} log((pi/n) / sin(pi/n)); the summand
    // decays like (pi/n)^2 / 6, which gives the analytic tail bound.
    long double log_sum = 0.0L;
    const long double pi = std::numbers::pi_v<long double>;
    for (long n = 2; n < 2 + terms; ++n) {
        const long double a = pi / n;
        log_sum += std::log(a / std::sin(a));
    }
    if (tail_correction) {
        // sum_{n > N} (pi/n)^2/6 = (pi^2/6) * psi'(N+1), with psi'(x) ~
        // 1/x + 1/(2x^2) + 1/(6x^3); the neglected fourth-order part is
        // below 1e-12 for N >= 1e4.
        const long double N = static_cast<long double>(terms + 1);
        const long double trigamma = 1.0L / N + 1.0L / (2.0L * N * N) + 1.0L / (6.0L * N * N * N);
        log_sum += pi * pi / 6.0L * trigamma;
    }
    return static_cast<double>(std::sqrt(2.0L * std::exp(log_sum)));
}

double kappa_d() {
    static const double value = kappa_d_truncated(100000, true);
    return value;
}

bool is_degenerate(Method method) {
    return method == Method::HoeffdingD || method == Method::BkrR || method == Method::TauStar;
}

GumbelLaw gumbel_law_for(Method method) {
    switch (method) {
        case Method::HoeffdingD:
            return {1, kappa_d(), kLambda1D, kCapitalLambdaD};
        case Method::BkrR:
            return {1, kappa_d(), 2.0 * kLambda1D, 2.0 * kCapitalLambdaD};
        case Method::TauStar:
            return {1, kappa_d(), 3.0 * kLambda1D, 3.0 * kCapitalLambdaD};
        default:
            return {1, 1.0, 1.0, 1.0};
    }
}

double gumbel_quantile(double alpha, const GumbelLaw& law) {
    if (!(alpha > 0.0) || !(alpha < 1.0)) {
        throw InvalidAlpha("alpha must lie in (0, 1), got " + std::to_string(alpha));
    }
    const double gamma = std::tgamma(law.mu1 / 2.0);
    // log log 1/(1-alpha) through log1p for accuracy at small alpha.
    const double loglog = std::log(-std::log1p(-alpha));
    return -std::log(gamma * gamma / (law.kappa * law.kappa)) - 2.0 * loglog;
}

double gumbel_p_value(double y, const GumbelLaw& law) {
    if (std::isnan(y)) {
        throw InvalidInput("gumbel_p_value: y is NaN");
    }
    const double coef = law.kappa / std::tgamma(law.mu1 / 2.0);
    return -std::expm1(-coef * std::exp(-y / 2.0));
}

}  // namespace wnrank
