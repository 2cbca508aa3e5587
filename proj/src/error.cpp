#include "vizsim/error.hpp"

namespace vizsim {

namespace {

std::string located(const std::string& message, std::size_t line, std::size_t column)
{
    std::string prefix;
    if (line != 0) {
        prefix = "line " + std::to_string(line);
        if (column != 0) {
            prefix += ", column " + std::to_string(column);
        }
    } else if (column != 0) {
        prefix = "column " + std::to_string(column);
    }
    return prefix.empty() ? message : prefix + ": " + message;
}

} // namespace

ParseError::ParseError(std::string message, std::size_t line, std::size_t column)
    : std::runtime_error(located(message, line, column)),
      detail_(std::move(message)),
      line_(line),
      column_(column)
{
}

ParseError ParseError::at_line(std::size_t line, std::size_t column_offset) const
{
    return ParseError(detail_, line, column_ == 0 ? 0 : column_ + column_offset);
}

} // namespace vizsim
