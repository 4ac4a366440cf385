#include "wnrank/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

namespace wnrank {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(trim(line.substr(start)));
            break;
        }
        fields.push_back(trim(line.substr(start, comma - start)));
        start = comma + 1;
    }
    return fields;
}

}  // namespace

SeriesPanel load_csv(std::istream& in, bool has_header) {
    std::string line;
    std::size_t line_no = 0;
    std::vector<std::string> names;
    std::vector<double> row_major;
    std::size_t p = 0;
    std::size_t n_rows = 0;

    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty() && n_rows == 0 && names.empty()) {
            // Skip leading blank lines; blanks inside data are ragged rows.
            continue;
        }
        const auto fields = split_fields(line);
        if (has_header && names.empty() && n_rows == 0) {
            for (const auto& f : fields) names.emplace_back(f);
            p = fields.size();
            continue;
        }
        if (p == 0) {
            p = fields.size();
        } else if (fields.size() != p) {
            throw ParseError("line " + std::to_string(line_no) + ": expected " +
                                 std::to_string(p) + " fields, got " +
                                 std::to_string(fields.size()),
                             line_no);
        }
        for (std::size_t c = 0; c < fields.size(); ++c) {
            const std::string_view f = fields[c];
            double v = 0.0;
            const auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
            if (ec != std::errc{} || ptr != f.data() + f.size() || !std::isfinite(v)) {
                throw ParseError("line " + std::to_string(line_no) + ", column " +
                                     std::to_string(c + 1) + ": cannot parse '" +
                                     std::string(f) + "' as a finite number",
                                 line_no, c + 1);
            }
            row_major.push_back(v);
        }
        ++n_rows;
    }
    if (n_rows == 0) {
        throw EmptyInput("CSV input has no data rows");
    }
    return SeriesPanel::from_rows(static_cast<int>(n_rows), static_cast<int>(p), row_major,
                                  std::move(names));
}

SeriesPanel load_csv_file(const std::string& path, bool has_header) {
    std::ifstream in(path);
    if (!in) {
        throw InvalidInput("cannot open '" + path + "' for reading");
    }
    return load_csv(in, has_header);
}

std::string format_double(double value) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, ptr);
}

void write_csv(std::ostream& out, const SeriesPanel& panel) {
    const int n = panel.n();
    const int p = panel.p();
    if (!panel.column_names().empty()) {
        for (int c = 0; c < p; ++c) {
            out << (c ? "," : "") << panel.column_names()[c];
        }
        out << '\n';
    }
    for (int t = 0; t < n; ++t) {
        for (int c = 0; c < p; ++c) {
            out << (c ? "," : "") << format_double(panel.at(t, c));
        }
        out << '\n';
    }
}

void write_csv_file(const std::string& path, const SeriesPanel& panel) {
    std::ofstream out(path);
    if (!out) {
        throw InvalidInput("cannot open '" + path + "' for writing");
    }
    write_csv(out, panel);
}

}  // namespace wnrank
