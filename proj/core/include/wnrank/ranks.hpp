#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "wnrank/panel.hpp"

namespace wnrank {

/// 1-based ranks of a sequence. Ties are broken by original position
/// (stable), so the result is always a permutation of 1..m; tie_flag records
/// whether any tie was broken that way.
struct RankVector {
    std::vector<std::int32_t> r;
    bool tie_flag = false;
};

/// Ranks of `values` (1-based, stable tie policy). Throws InvalidInput on
/// non-finite entries or an empty sequence.
RankVector ranks(std::span<const double> values);

/// Rank data of a lag pair: qx are the ranks of x, qy the ranks of y, and r
/// the relative ranks of y aligned by the rank order of x, i.e.
/// r[qx[t] - 1] == qy[t] for every t.
struct RankProfile {
    std::vector<std::int32_t> qx;
    std::vector<std::int32_t> qy;
    std::vector<std::int32_t> r;
    bool tie_flag = false;

    int m() const { return static_cast<int>(r.size()); }
};

/// Relative-rank profile of a pair.
RankProfile relative_ranks(const LagPairSample& pair);

/// Composes precomputed rank vectors into relative ranks (r[qx[t]-1] = qy[t]).
std::vector<std::int32_t> compose_relative_ranks(std::span<const std::int32_t> qx,
                                                 std::span<const std::int32_t> qy);

}  // namespace wnrank
