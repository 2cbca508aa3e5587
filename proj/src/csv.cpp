#include "vizsim/csv.hpp"

#include "vizsim/error.hpp"

namespace vizsim::csv {

std::vector<Record> split_records(std::string_view content)
{
    if (content.substr(0, 3) == "\xEF\xBB\xBF") {
        content.remove_prefix(3);
    }
    std::vector<Record> records;
    std::size_t line = 0;
    while (!content.empty()) {
        ++line;
        const std::size_t eol = content.find('\n');
        std::string_view text = content.substr(0, eol);
        content = eol == std::string_view::npos ? std::string_view{} : content.substr(eol + 1);
        if (!text.empty() && text.back() == '\r') {
            text.remove_suffix(1);
        }
        records.push_back({line, text});
    }
    return records;
}

std::vector<std::string> split_fields(std::string_view record)
{
    std::vector<std::string> fields(1);
    std::size_t i = 0;
    bool at_field_start = true;
    while (i < record.size()) {
        const char c = record[i];
        if (c == '"' && at_field_start) {
            const std::size_t open = i++;
            while (true) {
                if (i >= record.size()) {
                    throw ParseError("unterminated quoted field", 0, open + 1);
                }
                if (record[i] == '"') {
                    if (i + 1 < record.size() && record[i + 1] == '"') {
                        fields.back() += '"';
                        i += 2;
                        continue;
                    }
                    ++i;
                    break;
                }
                fields.back() += record[i++];
            }
            if (i < record.size() && record[i] != ',') {
                throw ParseError("unexpected character after quoted field", 0, i + 1);
            }
            at_field_start = false;
            continue;
        }
        if (c == ',') {
            fields.emplace_back();
            at_field_start = true;
        } else {
            fields.back() += c;
            at_field_start = false;
        }
        ++i;
    }
    return fields;
}

std::string escape(std::string_view field)
{
    if (field.find_first_of(",\"\r\n") == std::string_view::npos) {
        return std::string(field);
    }
    std::string out = "\"";
    for (const char c : field) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    out += '"';
    return out;
}

} // namespace vizsim::csv
