#include "wnrank/ranks.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace wnrank {

RankVector ranks(std::span<const double> values) {
    const std::size_t m = values.size();
    if (m == 0) {
        throw InvalidInput("ranks: empty input");
    }
    for (double v : values) {
        if (!std::isfinite(v)) {
            throw InvalidInput("ranks: non-finite input value");
        }
    }
    std::vector<std::int32_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    // Stable sort on value keeps equal values in original position order,
    // which is the tie policy: earlier observation gets the smaller rank.
    std::stable_sort(order.begin(), order.end(),
                     [&](std::int32_t a, std::int32_t b) { return values[a] < values[b]; });

    RankVector out;
    out.r.resize(m);
    for (std::size_t s = 0; s < m; ++s) {
        out.r[order[s]] = static_cast<std::int32_t>(s + 1);
        if (s > 0 && values[order[s]] == values[order[s - 1]]) {
            out.tie_flag = true;
        }
    }
    return out;
}

std::vector<std::int32_t> compose_relative_ranks(std::span<const std::int32_t> qx,
                                                 std::span<const std::int32_t> qy) {
    const std::size_t m = qx.size();
    std::vector<std::int32_t> r(m);
    for (std::size_t t = 0; t < m; ++t) {
        r[qx[t] - 1] = qy[t];
    }
    return r;
}

RankProfile relative_ranks(const LagPairSample& pair) {
    RankVector qx = ranks(pair.x);
    RankVector qy = ranks(pair.y);
    RankProfile profile;
    profile.tie_flag = qx.tie_flag || qy.tie_flag;
    profile.r = compose_relative_ranks(qx.r, qy.r);
    profile.qx = std::move(qx.r);
    profile.qy = std::move(qy.r);
    return profile;
}

}  // namespace wnrank
