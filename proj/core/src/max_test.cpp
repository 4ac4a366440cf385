#include "wnrank/max_test.hpp"

#include <cmath>
#include <limits>

#include "wnrank/errors.hpp"

namespace wnrank {

TestOutcome max_test(const PairScan& scan, double alpha) {
    if (scan.values.empty()) {
        throw InvalidInput("max_test: empty scan");
    }
    if (!(alpha > 0.0) || !(alpha < 1.0)) {
        throw InvalidAlpha("alpha must lie in (0, 1), got " + std::to_string(alpha));
    }
    const GumbelLaw law = gumbel_law_for(scan.method);
    const bool degenerate = is_degenerate(scan.method);
    const int p = scan.p;

    // Max over cells; the square-type families maximize z^2, the degenerate
    // family the signed statistic. Ties go to the smallest (i, j, k) triple.
    double best = -std::numeric_limits<double>::infinity();
    int bi = 0, bj = 0, bk = 1;
    for (int i = 0; i < p; ++i) {
        for (int j = 0; j < p; ++j) {
            for (int k = 1; k <= scan.K; ++k) {
                const double z = scan.at(k, i, j);
                const double candidate = degenerate ? z : z * z;
                if (candidate > best) {
                    best = candidate;
                    bi = i;
                    bj = j;
                    bk = k;
                }
            }
        }
    }

    const double n_cells = static_cast<double>(scan.N());
    const double log_n = std::log(n_cells);
    // -(mu1 - 2) log log N; mu1 = 1 everywhere here, giving + log log N.
    double y = best - 2.0 * log_n - (law.mu1 - 2.0) * std::log(log_n);
    if (degenerate) {
        y += law.capital_lambda / law.lambda1;
    }

    TestOutcome out;
    out.method = scan.method;
    out.alpha = alpha;
    out.statistic = y;
    out.threshold = gumbel_quantile(alpha, law);
    out.p_value = gumbel_p_value(y, law);
    out.reject = y >= out.threshold;
    out.argmax_i = bi;
    out.argmax_j = bj;
    out.argmax_k = bk;
    out.n = scan.n;
    out.p = scan.p;
    out.K = scan.K;
    out.law = law;
    return out;
}

}  // namespace wnrank
