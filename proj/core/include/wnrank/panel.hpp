#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "wnrank/errors.hpp"

namespace wnrank {

/// An n x p observation matrix, rows indexed by time. Stored column-major so
/// that lag-pair extraction is a pair of subspans. All entries are finite.
class SeriesPanel {
  public:
    SeriesPanel() = default;

    /// Takes column-major data (column c occupies [c*n, (c+1)*n)).
    SeriesPanel(int n, int p, std::vector<double> column_major,
                std::vector<std::string> column_names = {});

    /// Builds from a row-major buffer (row t occupies [t*p, (t+1)*p)).
    static SeriesPanel from_rows(int n, int p, std::span<const double> row_major,
                                 std::vector<std::string> column_names = {});

    int n() const { return n_; }
    int p() const { return p_; }

    std::span<const double> col(int c) const {
        return {data_.data() + static_cast<std::size_t>(c) * n_, static_cast<std::size_t>(n_)};
    }
    double at(int t, int c) const { return data_[static_cast<std::size_t>(c) * n_ + t]; }

    const std::vector<double>& data() const { return data_; }
    const std::vector<std::string>& column_names() const { return names_; }

    /// Name used when reporting column c (header name if present, else 1-based index).
    std::string column_label(int c) const;

    /// True if any column contains duplicated values.
    bool has_ties() const;
    /// 0-based indices of columns with duplicated values.
    std::vector<int> tied_columns() const;

  private:
    int n_ = 0;
    int p_ = 0;
    std::vector<double> data_;
    std::vector<std::string> names_;
};

/// The aligned pair {(x_t, y_t)}_{t=1..m} for one (column i, column j, lag k)
/// triple: x runs over rows 1..n-k of column i, y over rows k+1..n of column
/// j. Non-owning; valid while the source panel is alive.
struct LagPairSample {
    std::span<const double> x;
    std::span<const double> y;
    int i = 0;  ///< 0-based column index of x
    int j = 0;  ///< 0-based column index of y
    int k = 1;  ///< lag, >= 1

    int m() const { return static_cast<int>(x.size()); }
};

/// Minimum usable aligned-sample length: enough points for every built-in
/// statistic (the largest kernel order is 6).
inline constexpr int kMinPairLength = 8;

/// Extracts the lag-k pair of columns i and j (0-based). Requires n-k >= 8.
LagPairSample lag_pair(const SeriesPanel& panel, int i, int j, int k);

/// Builds a LagPairSample from two free-standing sequences (for direct use of
/// the per-pair statistics outside of a panel).
LagPairSample make_lag_pair(std::span<const double> x, std::span<const double> y);

}  // namespace wnrank
