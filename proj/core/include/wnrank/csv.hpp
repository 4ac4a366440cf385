#pragma once

#include <iosfwd>
#include <string>

#include "wnrank/panel.hpp"

namespace wnrank {

/// Reads a rectangular numeric CSV (comma separated, '.' decimal point, no
/// locale, optional CRLF endings) into a panel, rows = time. With has_header
/// the first row supplies column names used in argmax reporting. Throws
/// ParseError (1-based line/column) on ragged rows or non-numeric cells and
/// EmptyInput on an empty stream.
SeriesPanel load_csv(std::istream& in, bool has_header);
SeriesPanel load_csv_file(const std::string& path, bool has_header);

/// Writes a panel as CSV using shortest round-trip decimal formatting; a
/// header row is emitted when the panel carries column names.
void write_csv(std::ostream& out, const SeriesPanel& panel);
void write_csv_file(const std::string& path, const SeriesPanel& panel);

/// Shortest decimal representation that parses back to exactly `value`.
std::string format_double(double value);

}  // namespace wnrank
