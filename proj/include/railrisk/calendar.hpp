#pragma once

#include <compare>
#include <string>
#include <string_view>

namespace railrisk {

// A calendar date. Instances produced by parse_date / from_day_number are
// always valid Gregorian dates; the comparison order is chronological.
struct Date {
  int year = 1970;
  unsigned month = 1;  // 1..12
  unsigned day = 1;    // 1..31

  auto operator<=>(const Date&) const = default;
};

// A date with a local wall-clock time of day, second precision.
struct DateTime {
  Date date;
  int hour = 0;
  int minute = 0;
  int second = 0;

  auto operator<=>(const DateTime&) const = default;
};

bool is_valid_date(int year, unsigned month, unsigned day);

// Strict "YYYY-MM-DD"; throws ConstructionError on format or calendar
// violations (e.g. 2014-02-30).
Date parse_date(std::string_view text);

// Strict ISO 8601 at second precision, "YYYY-MM-DDTHH:MM:SS".
DateTime parse_datetime(std::string_view text);

std::string format_date(const Date& d);
std::string format_datetime(const DateTime& dt);

// Days since the civil epoch 1970-01-01 (negative before it). The
// difference of two day numbers is the exact calendar-day distance.
long day_number(const Date& d);
Date date_from_day_number(long days);

}  // namespace railrisk
