#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wnrank {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Non-finite or otherwise unusable numeric input.
struct InvalidInput : Error {
    using Error::Error;
};

/// Column index or lag outside the valid range.
struct IndexError : Error {
    using Error::Error;
};

/// Sample too short for the requested statistic.
struct TooShort : Error {
    using Error::Error;
};

/// Enumeration budget exceeded (exact U-statistic evaluation).
struct TooLarge : Error {
    using Error::Error;
};

/// Degenerate or non-finite score functions for a linear rank statistic.
struct InvalidScore : Error {
    using Error::Error;
};

/// Significance level outside (0, 1).
struct InvalidAlpha : Error {
    using Error::Error;
};

/// L outside {1, ..., N} for an L-statistic.
struct InvalidL : Error {
    using Error::Error;
};

/// Simulated trajectory left the finite range.
struct DivergedModel : Error {
    using Error::Error;
};

/// Empty input file or stream.
struct EmptyInput : Error {
    using Error::Error;
};

/// CSV cell or row that cannot be parsed; positions are 1-based (0 = n/a).
struct ParseError : Error {
    ParseError(const std::string& msg, std::size_t line, std::size_t column = 0)
        : Error(msg), line(line), column(column) {}
    std::size_t line;
    std::size_t column;
};

/// Bad command line usage.
struct UsageError : Error {
    using Error::Error;
};

}  // namespace wnrank
