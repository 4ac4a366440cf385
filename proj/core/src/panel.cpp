#include "wnrank/panel.hpp"

#include <algorithm>
#include <cmath>

namespace wnrank {

namespace {

void check_dims(int n, int p, std::size_t size) {
    if (n <= 0 || p <= 0) {
        throw InvalidInput("panel dimensions must be positive, got n=" + std::to_string(n) +
                           ", p=" + std::to_string(p));
    }
    if (size != static_cast<std::size_t>(n) * static_cast<std::size_t>(p)) {
        throw InvalidInput("panel buffer size does not match n*p");
    }
}

void check_finite(const std::vector<double>& data) {
    for (double v : data) {
        if (!std::isfinite(v)) {
            throw InvalidInput("panel contains a non-finite entry");
        }
    }
}

}  // namespace

SeriesPanel::SeriesPanel(int n, int p, std::vector<double> column_major,
                         std::vector<std::string> column_names)
    : n_(n), p_(p), data_(std::move(column_major)), names_(std::move(column_names)) {
    check_dims(n, p, data_.size());
    check_finite(data_);
    if (!names_.empty() && names_.size() != static_cast<std::size_t>(p)) {
        throw InvalidInput("column name count does not match p");
    }
}

SeriesPanel SeriesPanel::from_rows(int n, int p, std::span<const double> row_major,
                                   std::vector<std::string> column_names) {
    check_dims(n, p, row_major.size());
    std::vector<double> cm(row_major.size());
    for (int t = 0; t < n; ++t) {
        for (int c = 0; c < p; ++c) {
            cm[static_cast<std::size_t>(c) * n + t] = row_major[static_cast<std::size_t>(t) * p + c];
        }
    }
    return SeriesPanel(n, p, std::move(cm), std::move(column_names));
}

std::string SeriesPanel::column_label(int c) const {
    if (!names_.empty() && !names_[c].empty()) return names_[c];
    return std::to_string(c + 1);
}

bool SeriesPanel::has_ties() const { return !tied_columns().empty(); }

std::vector<int> SeriesPanel::tied_columns() const {
    std::vector<int> tied;
    std::vector<double> scratch(n_);
    for (int c = 0; c < p_; ++c) {
        auto column = col(c);
        scratch.assign(column.begin(), column.end());
        std::sort(scratch.begin(), scratch.end());
        if (std::adjacent_find(scratch.begin(), scratch.end()) != scratch.end()) {
            tied.push_back(c);
        }
    }
    return tied;
}

LagPairSample lag_pair(const SeriesPanel& panel, int i, int j, int k) {
    const int n = panel.n();
    const int p = panel.p();
    if (i < 0 || i >= p || j < 0 || j >= p) {
        throw IndexError("column index out of range: i=" + std::to_string(i) +
                         ", j=" + std::to_string(j) + ", p=" + std::to_string(p));
    }
    if (k < 1) {
        throw IndexError("lag must be >= 1, got " + std::to_string(k));
    }
    const int m = n - k;
    if (m < kMinPairLength) {
        throw IndexError("lag " + std::to_string(k) + " leaves only " + std::to_string(m) +
                         " aligned points (need >= " + std::to_string(kMinPairLength) + ")");
    }
    LagPairSample pair;
    pair.x = panel.col(i).first(m);
    pair.y = panel.col(j).subspan(k, m);
    pair.i = i;
    pair.j = j;
    pair.k = k;
    return pair;
}

LagPairSample make_lag_pair(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) {
        throw InvalidInput("paired sequences must have equal length");
    }
    LagPairSample pair;
    pair.x = x;
    pair.y = y;
    return pair;
}

}  // namespace wnrank
