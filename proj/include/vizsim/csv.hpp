#pragma once

// Minimal RFC-4180-style CSV helpers. Records are single lines; quoted
// fields may contain commas and doubled quotes but not line breaks.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace vizsim::csv {

struct Record {
    std::size_t line;
    std::string_view text;
};

/// Splits on LF, dropping a trailing CR and a leading UTF-8 BOM.
std::vector<Record> split_records(std::string_view content);

/// Throws ParseError (column set, line unset) on a malformed quoted field.
std::vector<std::string> split_fields(std::string_view record);

/// Quotes `field` when it contains a comma, quote or line break.
std::string escape(std::string_view field);

} // namespace vizsim::csv
