#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace oapl::csv {

struct Row {
    std::size_t line = 0;  // 1-based physical line where the record starts
    std::vector<std::string> fields;
};

// RFC 4180 reader: quoted fields, doubled quotes, CRLF tolerated.
// Blank lines are skipped. Throws InputError on an unterminated quote.
std::vector<Row> read(std::string_view text);

// Quotes a field only when it contains a delimiter, quote or newline.
std::string escape(std::string_view field);

std::string join(const std::vector<std::string>& fields);

}  // namespace oapl::csv
