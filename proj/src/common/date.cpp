#include "oapl/common/date.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>

#include "oapl/common/error.hpp"

namespace oapl {
namespace {

int parse_digits(std::string_view text, std::size_t pos, std::size_t len, std::string_view whole) {
    int value = 0;
    auto piece = text.substr(pos, len);
    for (char c : piece) {
        if (!std::isdigit(static_cast<unsigned char>(c))) {
            throw InputError("invalid date '" + std::string(whole) + "'");
        }
    }
    std::from_chars(piece.data(), piece.data() + piece.size(), value);
    return value;
}

}  // namespace

PartialDate parse_partial_date(std::string_view text) {
    PartialDate out;
    int y = 0;
    unsigned m = 1, d = 1;
    if (text.size() == 4) {
        y = parse_digits(text, 0, 4, text);
        out.precision = DatePrecision::Year;
    } else if (text.size() == 7 && text[4] == '-') {
        y = parse_digits(text, 0, 4, text);
        m = static_cast<unsigned>(parse_digits(text, 5, 2, text));
        out.precision = DatePrecision::Month;
    } else if (text.size() == 10 && text[4] == '-' && text[7] == '-') {
        y = parse_digits(text, 0, 4, text);
        m = static_cast<unsigned>(parse_digits(text, 5, 2, text));
        d = static_cast<unsigned>(parse_digits(text, 8, 2, text));
        out.precision = DatePrecision::Day;
    } else {
        throw InputError("invalid date '" + std::string(text) + "'");
    }
    out.date = make_date(y, m, d);
    if (!out.date.ok()) throw InputError("invalid date '" + std::string(text) + "'");
    return out;
}

Date parse_date(std::string_view text) {
    auto p = parse_partial_date(text);
    if (p.precision != DatePrecision::Day) {
        throw InputError("expected YYYY-MM-DD, got '" + std::string(text) + "'");
    }
    return p.date;
}

std::string format_date(const Date& d) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(d.year()),
                  static_cast<unsigned>(d.month()), static_cast<unsigned>(d.day()));
    return buf;
}

std::string format_partial_date(const PartialDate& d) {
    auto full = format_date(d.date);
    switch (d.precision) {
        case DatePrecision::Year: return full.substr(0, 4);
        case DatePrecision::Month: return full.substr(0, 7);
        case DatePrecision::Day: break;
    }
    return full;
}

}  // namespace oapl
