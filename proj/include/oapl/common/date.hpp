#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace oapl {

using Date = std::chrono::year_month_day;

enum class DatePrecision { Day, Month, Year };

// A calendar date that may have been recorded with only year or year-month
// resolution. Missing components are completed to the first day/month.
struct PartialDate {
    Date date;
    DatePrecision precision = DatePrecision::Day;

    friend bool operator==(const PartialDate&, const PartialDate&) = default;
};

// Strict YYYY-MM-DD. Throws InputError.
Date parse_date(std::string_view text);

// YYYY, YYYY-MM or YYYY-MM-DD. Throws InputError.
PartialDate parse_partial_date(std::string_view text);

std::string format_date(const Date& d);
std::string format_partial_date(const PartialDate& d);

constexpr Date make_date(int y, unsigned m, unsigned d) {
    return Date{std::chrono::year{y}, std::chrono::month{m}, std::chrono::day{d}};
}

// b - a in days.
inline long days_between(const Date& a, const Date& b) {
    return (std::chrono::sys_days{b} - std::chrono::sys_days{a}).count();
}

inline Date add_days(const Date& d, long days) {
    return Date{std::chrono::sys_days{d} + std::chrono::days{days}};
}

inline int year_of(const Date& d) { return static_cast<int>(d.year()); }

}  // namespace oapl
