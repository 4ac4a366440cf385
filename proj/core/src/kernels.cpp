#include "wnrank/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace wnrank {

namespace {

inline double leq(double a, double b) { return a <= b ? 1.0 : 0.0; }

// I(y1, y2 < y3, y4): all four strict comparisons hold.
inline double all_less(double y1, double y2, double y3, double y4) {
    return (y1 < y3 && y1 < y4 && y2 < y3 && y2 < y4) ? 1.0 : 0.0;
}

// Signed 2+2 split indicator used by the tau-star kernel, applied to one
// coordinate of four points.
inline double split_sign(double z1, double z2, double z3, double z4) {
    return all_less(z1, z3, z2, z4) + all_less(z2, z4, z1, z3) - all_less(z1, z4, z2, z3) -
           all_less(z2, z3, z1, z4);
}

template <int Order, typename Term>
double permutation_average(std::span<const KernelPoint> z, double norm, Term term) {
    std::array<int, Order> idx{};
    std::iota(idx.begin(), idx.end(), 0);
    double sum = 0.0;
    do {
        sum += term(z, idx);
    } while (std::next_permutation(idx.begin(), idx.end()));
    return sum / norm;
}

double hoeffding_d_eval(std::span<const KernelPoint> z) {
    return permutation_average<5>(z, 16.0, [](std::span<const KernelPoint> z,
                                              const std::array<int, 5>& i) {
        const double x5 = z[i[4]][0], y5 = z[i[4]][1];
        const double fx = (leq(z[i[0]][0], x5) - leq(z[i[1]][0], x5)) *
                          (leq(z[i[2]][0], x5) - leq(z[i[3]][0], x5));
        const double fy = (leq(z[i[0]][1], y5) - leq(z[i[1]][1], y5)) *
                          (leq(z[i[2]][1], y5) - leq(z[i[3]][1], y5));
        return fx * fy;
    });
}

double bkr_r_eval(std::span<const KernelPoint> z) {
    return permutation_average<6>(z, 32.0, [](std::span<const KernelPoint> z,
                                              const std::array<int, 6>& i) {
        const double x5 = z[i[4]][0];
        const double y6 = z[i[5]][1];
        const double fx = (leq(z[i[0]][0], x5) - leq(z[i[1]][0], x5)) *
                          (leq(z[i[2]][0], x5) - leq(z[i[3]][0], x5));
        const double fy = (leq(z[i[0]][1], y6) - leq(z[i[1]][1], y6)) *
                          (leq(z[i[2]][1], y6) - leq(z[i[3]][1], y6));
        return fx * fy;
    });
}

double tau_star_eval(std::span<const KernelPoint> z) {
    return permutation_average<4>(z, 16.0, [](std::span<const KernelPoint> z,
                                              const std::array<int, 4>& i) {
        const double ax =
            split_sign(z[i[0]][0], z[i[1]][0], z[i[2]][0], z[i[3]][0]);
        if (ax == 0.0) return 0.0;
        const double ay =
            split_sign(z[i[0]][1], z[i[1]][1], z[i[2]][1], z[i[3]][1]);
        return ax * ay;
    });
}

double binomial(int n, int k) {
    double v = 1.0;
    for (int i = 1; i <= k; ++i) {
        v *= static_cast<double>(n - k + i) / i;
    }
    return v;
}

}  // namespace

const KernelSpec& hoeffding_d_kernel() {
    static const KernelSpec spec{KernelSpec::Id::HoeffdingD, 5, true, hoeffding_d_eval};
    return spec;
}

const KernelSpec& bkr_r_kernel() {
    static const KernelSpec spec{KernelSpec::Id::BkrR, 6, true, bkr_r_eval};
    return spec;
}

const KernelSpec& tau_star_kernel() {
    static const KernelSpec spec{KernelSpec::Id::TauStar, 4, true, tau_star_eval};
    return spec;
}

double u_stat_exact(const KernelSpec& kernel, const LagPairSample& pair) {
    const int m = pair.m();
    const int q = kernel.order;
    if (q < 1 || !kernel.evaluator) {
        throw InvalidInput("u_stat_exact: kernel has no evaluator or bad order");
    }
    if (m < q) {
        throw TooShort("u_stat_exact: need at least " + std::to_string(q) + " points, got " +
                       std::to_string(m));
    }

    double calls = binomial(m, q);
    if (!kernel.symmetric) {
        for (int i = 2; i <= q; ++i) calls *= i;
    }
    if (calls > 1e8) {
        throw TooLarge("u_stat_exact: enumeration budget exceeded");
    }

    std::vector<KernelPoint> points(m);
    for (int t = 0; t < m; ++t) {
        points[t] = {pair.x[t], pair.y[t]};
    }

    std::vector<int> comb(q);
    std::iota(comb.begin(), comb.end(), 0);
    std::vector<KernelPoint> args(q);
    std::vector<int> perm(q);
    double sum = 0.0;
    std::int64_t count = 0;

    auto eval_subset = [&]() {
        if (kernel.symmetric) {
            for (int s = 0; s < q; ++s) args[s] = points[comb[s]];
            sum += kernel.evaluator(args);
            ++count;
        } else {
            std::iota(perm.begin(), perm.end(), 0);
            do {
                for (int s = 0; s < q; ++s) args[s] = points[comb[perm[s]]];
                sum += kernel.evaluator(args);
                ++count;
            } while (std::next_permutation(perm.begin(), perm.end()));
        }
    };

    // Enumerate all q-subsets of {0, ..., m-1} in lexicographic order.
    while (true) {
        eval_subset();
        int pos = q - 1;
        while (pos >= 0 && comb[pos] == m - q + pos) --pos;
        if (pos < 0) break;
        ++comb[pos];
        for (int s = pos + 1; s < q; ++s) comb[s] = comb[s - 1] + 1;
    }
    return sum / static_cast<double>(count);
}

}  // namespace wnrank
