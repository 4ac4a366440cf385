#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "wnrank/max_test.hpp"
#include "wnrank/mc.hpp"

namespace wnrank {

/// Schema version of serialized result documents.
inline constexpr const char* kSchemaVersion = "1";

/// Everything a command run produces: the resolved configuration echo, the
/// outcome (a single test decision or a Monte Carlo table), warnings and
/// timing. Round-trips losslessly through its JSON form.
struct ResultDocument {
    std::string schema_version = kSchemaVersion;
    /// Resolved configuration as flat key -> value strings.
    std::vector<std::pair<std::string, std::string>> command;
    std::variant<TestOutcome, McTable> outcome;
    std::vector<std::string> warnings;
    double timing_seconds = 0.0;
    /// Column labels of the argmax pair, when the input carried a header.
    std::string argmax_i_label;
    std::string argmax_j_label;
};

std::string to_json(const ResultDocument& doc);
ResultDocument result_document_from_json(const std::string& text);

/// CSV projection of the outcome: one row for a test decision, one row per
/// cell for a table.
std::string to_csv(const ResultDocument& doc);

}  // namespace wnrank
