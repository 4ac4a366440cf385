#pragma once

#include <array>
#include <functional>
#include <span>
#include <string>

#include "wnrank/panel.hpp"

namespace wnrank {

/// A bivariate point fed to a U-statistic kernel.
using KernelPoint = std::array<double, 2>;

/// A U-statistic kernel: its order and an evaluator on `order` points of R^2.
/// The built-in kernels are symmetric averages of +-1/0 indicator products
/// and are bounded by 1 in absolute value.
struct KernelSpec {
    enum class Id { HoeffdingD, BkrR, TauStar, Custom };

    Id id = Id::Custom;
    int order = 0;
    bool symmetric = false;
    std::function<double(std::span<const KernelPoint>)> evaluator;
};

/// Order-5 kernel of the Hoeffding dependence statistic.
const KernelSpec& hoeffding_d_kernel();
/// Order-6 kernel of the Blum-Kiefer-Rosenblatt statistic.
const KernelSpec& bkr_r_kernel();
/// Order-4 kernel of the Bergsma-Dassios-Yanagimoto tau-star statistic.
const KernelSpec& tau_star_kernel();

/// Exact U-statistic value by complete enumeration. Symmetric kernels are
/// averaged over all size-`order` index subsets; general kernels over all
/// ordered tuples of distinct indices. Throws TooLarge when the number of
/// evaluator calls would exceed 1e8, and TooShort when m < order.
double u_stat_exact(const KernelSpec& kernel, const LagPairSample& pair);

}  // namespace wnrank
