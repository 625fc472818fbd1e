#pragma once

#include <array>
#include <string_view>
#include <vector>

#include "railrisk/rail_domain.hpp"

namespace railrisk {

// How raw calendar coordinates map onto the model's coarse states: every
// month belongs to exactly one season and every hour to exactly one time
// bucket. Completeness and disjointness hold by construction (the maps are
// total arrays); validate() additionally requires the morning bucket to be
// one nonempty contiguous block of hours, with at least one hour left over.
struct BucketMaps {
  std::array<Season, 12> month_to_season;      // [0] is January
  std::array<TimeBucket, 24> hour_to_bucket;   // [0] is midnight..01:00

  // The documented defaults: winter = Apr-Jul, late winter = Aug-Sep,
  // early summer = Oct-Dec, late summer = Jan-Mar; morning = [04:00, 11:00).
  static BucketMaps defaults();

  // Throws ConstructionError when the morning hours are empty, cover the
  // whole day, or are not contiguous.
  void validate() const;

  // Number of hours mapped to the bucket.
  int hours_in(TimeBucket t) const;
  // Number of months mapped to the season.
  int months_in(Season s) const;
  // Hours (0..23, ascending) mapped to the bucket.
  std::vector<int> hours_of(TimeBucket t) const;
};

// Season for a calendar month (1..12). Throws ConstructionError on range.
Season assign_season(unsigned month, const BucketMaps& maps);

// Time bucket for an hour of day (0..23). Throws ConstructionError on range.
TimeBucket assign_time_bucket(int hour, const BucketMaps& maps);

// Section for a position label along the line. Accepts the canonical
// section names, the yard endpoints ("salkor", "erts"), the two named
// loops ("bamboesbaai" = loop 3, "halfweg" = loop 10), and "loop_0" ..
// "loop_21". Loops below 3 are coastal, 3..9 semi-coastal, 10 and above
// inland — range boundaries belong to the farther-inland section. Throws
// EvidenceError on anything else.
Section assign_section(std::string_view position_label);

}  // namespace railrisk
