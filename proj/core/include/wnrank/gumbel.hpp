#pragma once

#include "wnrank/correlations.hpp"

namespace wnrank {

/// Parameters of the limiting extreme-value law of a centered max statistic:
/// CDF(y) = exp(-(kappa / Gamma(mu1/2)) * exp(-y/2)).
///
/// For the square-type families (Spearman, Kendall, Chatterjee, generic
/// linear rank) mu1 = 1 and kappa = 1, giving the pi^{-1/2} coefficient. For
/// the degenerate U-statistic families, mu1 is the multiplicity of the
/// largest eigenvalue lambda1 of the kernel's order-2 projection, kappa the
/// spectral product over the remaining eigenvalues, and capital_lambda the
/// eigenvalue sum (it enters the centering as capital_lambda / lambda1).
struct GumbelLaw {
    int mu1 = 1;
    double kappa = 1.0;
    double lambda1 = 1.0;
    double capital_lambda = 1.0;
};

/// Spectral constant of the Hoeffding-type eigenvalue sequence:
/// {2 * prod_{n>=2} (pi/n)/sin(pi/n)}^{1/2}, about 2.467. Evaluated once to
/// at least 8 significant digits (truncated product plus analytic tail) and
/// cached.
double kappa_d();

/// Same product truncated after `terms` factors, with an optional
/// second-order tail correction. Exposed for convergence checks.
double kappa_d_truncated(long terms, bool tail_correction);

/// The limit law used by the max test for the given method.
GumbelLaw gumbel_law_for(Method method);

/// True for the degenerate U-statistic family (Hoeffding D, BKR R, tau*).
bool is_degenerate(Method method);

/// 1 - alpha quantile of the law: -log(Gamma(mu1/2)^2 / kappa^2)
/// - 2 log log 1/(1-alpha). Monotone decreasing in alpha; alpha must lie in
/// (0, 1).
double gumbel_quantile(double alpha, const GumbelLaw& law = GumbelLaw{});

/// Upper tail probability 1 - CDF(y); strictly decreasing in y.
double gumbel_p_value(double y, const GumbelLaw& law = GumbelLaw{});

}  // namespace wnrank
