#pragma once

#include <chrono>
#include <string>
#include <string_view>

namespace agm {

// Calendar date without time-of-day. All age arithmetic is whole days.
using Date = std::chrono::year_month_day;

/// Parses a strict "YYYY-MM-DD" string. Throws ParseError on malformed input
/// or an impossible calendar date (e.g. 2014-02-30).
Date parse_date(std::string_view text);

/// Formats as "YYYY-MM-DD".
std::string format_date(const Date& d);

/// Whole days from `from` to `to`; negative when `to` precedes `from`.
long days_between(const Date& from, const Date& to);

} // namespace agm
