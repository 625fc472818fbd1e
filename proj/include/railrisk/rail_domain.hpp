#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

#include "railrisk/variable.hpp"

namespace railrisk {

// The four operating seasons. They are deliberately not calendar quarters:
// the year is split by rail-break climatology, with winter running
// April-July. Enum values are the canonical state order everywhere.
enum class Season : std::size_t {
  kEarlySummer = 0,
  kLateSummer = 1,
  kWinter = 2,
  kLateWinter = 3,
};

// Two-way split of the day. Morning is the high-risk window around sunrise.
enum class TimeBucket : std::size_t {
  kMorning = 0,
  kNotMorning = 1,
};

// The three line sections between the origin yard and the terminus.
enum class Section : std::size_t {
  kCoastal = 0,
  kSemiCoastal = 1,
  kInland = 2,
};

inline constexpr std::size_t kSeasonCount = 4;
inline constexpr std::size_t kTimeBucketCount = 2;
inline constexpr std::size_t kSectionCount = 3;
inline constexpr std::size_t kBreakStateCount = 2;

std::string_view season_label(Season s);
std::string_view time_bucket_label(TimeBucket t);
std::string_view section_label(Section l);

// Strict lookups by canonical label; throw EvidenceError on unknown input.
Season season_from_label(std::string_view label);
TimeBucket time_bucket_from_label(std::string_view label);
Section section_from_label(std::string_view label);

// The four canonical variables of the rail-break network, with their fixed
// state orders. Every factor over this domain shares these definitions.
const Variable& season_variable();     // season: early_summer, late_summer, winter, late_winter
const Variable& time_variable();       // time_of_day: morning, not_morning
const Variable& location_variable();   // location: coastal, semi_coastal, inland
const Variable& break_variable();      // rail_break: no_break, break

inline constexpr std::string_view kSeasonName = "season";
inline constexpr std::string_view kTimeName = "time_of_day";
inline constexpr std::string_view kLocationName = "location";
inline constexpr std::string_view kBreakName = "rail_break";
inline constexpr std::string_view kNoBreakState = "no_break";
inline constexpr std::string_view kBreakState = "break";

// Exposure counts per (season, time bucket, section, outcome) cell, stored
// row major in that variable order with the outcome fastest: 48 cells.
class CountTable {
 public:
  static constexpr std::size_t kCells =
      kSeasonCount * kTimeBucketCount * kSectionCount * kBreakStateCount;

  CountTable() : cells_{} {}

  static std::size_t index(Season s, TimeBucket t, Section l, bool broke) {
    return ((static_cast<std::size_t>(s) * kTimeBucketCount + static_cast<std::size_t>(t)) *
                kSectionCount +
            static_cast<std::size_t>(l)) *
               kBreakStateCount +
           (broke ? 1 : 0);
  }

  std::int64_t& at(Season s, TimeBucket t, Section l, bool broke) {
    return cells_[index(s, t, l, broke)];
  }
  std::int64_t at(Season s, TimeBucket t, Section l, bool broke) const {
    return cells_[index(s, t, l, broke)];
  }

  const std::array<std::int64_t, kCells>& cells() const { return cells_; }
  std::array<std::int64_t, kCells>& cells() { return cells_; }

  std::int64_t total() const;

  bool operator==(const CountTable& other) const = default;

 private:
  std::array<std::int64_t, kCells> cells_;
};

// Human-readable cell name for error messages, e.g.
// "(season=winter, time_of_day=morning, location=inland)".
std::string describe_cell(Season s, TimeBucket t, Section l);

}  // namespace railrisk
