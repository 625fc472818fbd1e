#include "railrisk/calendar.hpp"

#include <charconv>
#include <chrono>
#include <cstdio>

#include "railrisk/error.hpp"

namespace railrisk {

namespace {

// Parses a fixed-width decimal field; returns false on any non-digit.
bool parse_fixed(std::string_view text, std::size_t pos, std::size_t width, int& out) {
  if (pos + width > text.size()) return false;
  int value = 0;
  for (std::size_t i = 0; i < width; ++i) {
    char c = text[pos + i];
    if (c < '0' || c > '9') return false;
    value = value * 10 + (c - '0');
  }
  out = value;
  return true;
}

}  // namespace

bool is_valid_date(int year, unsigned month, unsigned day) {
  using namespace std::chrono;
  return year_month_day(std::chrono::year(year), std::chrono::month(month),
                        std::chrono::day(day))
      .ok();
}

Date parse_date(std::string_view text) {
  int y = 0, m = 0, d = 0;
  bool shape_ok = text.size() == 10 && text[4] == '-' && text[7] == '-' &&
                  parse_fixed(text, 0, 4, y) && parse_fixed(text, 5, 2, m) &&
                  parse_fixed(text, 8, 2, d);
  if (!shape_ok) {
    throw ConstructionError("invalid date '" + std::string(text) + "', expected YYYY-MM-DD");
  }
  if (!is_valid_date(y, static_cast<unsigned>(m), static_cast<unsigned>(d))) {
    throw ConstructionError("invalid calendar date '" + std::string(text) + "'");
  }
  return Date{y, static_cast<unsigned>(m), static_cast<unsigned>(d)};
}

DateTime parse_datetime(std::string_view text) {
  int hh = 0, mm = 0, ss = 0;
  bool shape_ok = text.size() == 19 && text[10] == 'T' && text[13] == ':' && text[16] == ':' &&
                  parse_fixed(text, 11, 2, hh) && parse_fixed(text, 14, 2, mm) &&
                  parse_fixed(text, 17, 2, ss);
  if (!shape_ok) {
    throw ConstructionError("invalid timestamp '" + std::string(text) +
                            "', expected YYYY-MM-DDTHH:MM:SS");
  }
  Date date = parse_date(text.substr(0, 10));
  if (hh > 23 || mm > 59 || ss > 59) {
    throw ConstructionError("invalid time of day in '" + std::string(text) + "'");
  }
  return DateTime{date, hh, mm, ss};
}

std::string format_date(const Date& d) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", d.year, d.month, d.day);
  return buf;
}

std::string format_datetime(const DateTime& dt) {
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02uT%02d:%02d:%02d", dt.date.year, dt.date.month,
                dt.date.day, dt.hour, dt.minute, dt.second);
  return buf;
}

long day_number(const Date& d) {
  using namespace std::chrono;
  return sys_days(year_month_day(std::chrono::year(d.year), std::chrono::month(d.month),
                                 std::chrono::day(d.day)))
      .time_since_epoch()
      .count();
}

Date date_from_day_number(long days) {
  using namespace std::chrono;
  year_month_day ymd{sys_days(std::chrono::days(days))};
  return Date{static_cast<int>(ymd.year()), static_cast<unsigned>(ymd.month()),
              static_cast<unsigned>(ymd.day())};
}

}  // namespace railrisk
