#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "railrisk/buckets.hpp"
#include "railrisk/calendar.hpp"
#include "railrisk/rail_domain.hpp"

namespace railrisk {

// One train traversing one section once, with the observed outcome.
struct ExposureRecord {
  std::string train_id;
  DateTime timestamp;  // local line time
  Section section = Section::kCoastal;
  bool broke = false;

  bool operator==(const ExposureRecord&) const = default;
};

// The traffic assumption needed to turn break events into rates: a uniform
// daily train count over a half-open date period [start, end).
struct ScheduleConfig {
  double trains_per_day = 0.0;
  Date period_start;
  Date period_end;

  // Throws ConstructionError unless trains_per_day is a positive finite
  // number and the period contains at least one day.
  void validate() const;

  long period_days() const { return day_number(period_end) - day_number(period_start); }
  bool contains(const Date& d) const { return period_start <= d && d < period_end; }
};

inline constexpr std::string_view kExposureCsvHeader = "train_id,timestamp,section,broke";

// Strict CSV reader for the exposure schema. The header line must match
// kExposureCsvHeader exactly; every data row must have exactly four fields
// with a nonempty train id, an ISO 8601 timestamp at second precision, a
// canonical section name, and broke 0 or 1. Any violation throws
// ParseError carrying the 1-based line number; nothing is accepted
// partially. A header-only file yields an empty list.
std::vector<ExposureRecord> parse_exposures(std::istream& in);

// Same, reading from a file; throws IoError when the file cannot be opened.
std::vector<ExposureRecord> parse_exposures_file(const std::string& path);

void write_exposures_csv(std::ostream& out, const std::vector<ExposureRecord>& records);

// Builds the 48-cell count table from observed breaks plus the schedule's
// traffic assumption. Every section receives round(trains_per_day x days)
// exposures, spread over the (season, time bucket) cells proportionally to
// each cell's share of calendar time in the period and rounded by largest
// remainder so the per-section total is hit exactly. Breaks land in the
// cell their timestamp buckets into; the non-break count of a cell is its
// exposure total minus its breaks. Throws InconsistencyError when a break
// falls outside the period or a cell holds more breaks than exposures (the
// message names the cell), and ConstructionError for records with
// broke=false or an invalid schedule.
CountTable build_counts(const std::vector<ExposureRecord>& breaks, const ScheduleConfig& schedule,
                        const BucketMaps& maps);

}  // namespace railrisk
