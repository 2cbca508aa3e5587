#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace vizsim {

/// Malformed or invalid input text. `line` and `column` are 1-based; 0 means
/// "not applicable" (e.g. a single-line signature has no line number).
class ParseError : public std::runtime_error {
public:
    ParseError(std::string message, std::size_t line = 0, std::size_t column = 0);

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }
    /// The message without the location prefix.
    const std::string& detail() const noexcept { return detail_; }

    /// Same error relocated to `line` of an enclosing file.
    ParseError at_line(std::size_t line, std::size_t column_offset = 0) const;

private:
    std::string detail_;
    std::size_t line_;
    std::size_t column_;
};

/// A value or configuration violates a domain invariant.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// The data is well-formed but not sufficient for the requested analysis,
/// e.g. a pair nobody rated.
class IncompleteDataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace vizsim
