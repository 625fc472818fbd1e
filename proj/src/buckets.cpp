#include "railrisk/buckets.hpp"

#include <string>

#include "railrisk/error.hpp"

namespace railrisk {

BucketMaps BucketMaps::defaults() {
  BucketMaps maps{};
  for (unsigned month = 1; month <= 12; ++month) {
    Season s;
    if (month >= 4 && month <= 7) {
      s = Season::kWinter;
    } else if (month >= 8 && month <= 9) {
      s = Season::kLateWinter;
    } else if (month >= 10) {
      s = Season::kEarlySummer;
    } else {
      s = Season::kLateSummer;  // January .. March
    }
    maps.month_to_season[month - 1] = s;
  }
  for (int hour = 0; hour < 24; ++hour) {
    maps.hour_to_bucket[hour] =
        (hour >= 4 && hour < 11) ? TimeBucket::kMorning : TimeBucket::kNotMorning;
  }
  return maps;
}

void BucketMaps::validate() const {
  int first = -1, last = -1, count = 0;
  for (int hour = 0; hour < 24; ++hour) {
    if (hour_to_bucket[hour] == TimeBucket::kMorning) {
      if (first < 0) first = hour;
      last = hour;
      ++count;
    }
  }
  if (count == 0) {
    throw ConstructionError("time bucket map assigns no hours to morning");
  }
  if (count == 24) {
    throw ConstructionError("time bucket map assigns every hour to morning");
  }
  if (last - first + 1 != count) {
    throw ConstructionError("morning hours must form one contiguous block");
  }
}

int BucketMaps::hours_in(TimeBucket t) const {
  int count = 0;
  for (auto b : hour_to_bucket) {
    if (b == t) ++count;
  }
  return count;
}

int BucketMaps::months_in(Season s) const {
  int count = 0;
  for (auto m : month_to_season) {
    if (m == s) ++count;
  }
  return count;
}

std::vector<int> BucketMaps::hours_of(TimeBucket t) const {
  std::vector<int> hours;
  for (int hour = 0; hour < 24; ++hour) {
    if (hour_to_bucket[hour] == t) hours.push_back(hour);
  }
  return hours;
}

Season assign_season(unsigned month, const BucketMaps& maps) {
  if (month < 1 || month > 12) {
    throw ConstructionError("month " + std::to_string(month) + " out of range 1..12");
  }
  return maps.month_to_season[month - 1];
}

TimeBucket assign_time_bucket(int hour, const BucketMaps& maps) {
  if (hour < 0 || hour > 23) {
    throw ConstructionError("hour " + std::to_string(hour) + " out of range 0..23");
  }
  return maps.hour_to_bucket[hour];
}

Section assign_section(std::string_view position_label) {
  if (position_label == "coastal" || position_label == "salkor") return Section::kCoastal;
  if (position_label == "semi_coastal" || position_label == "bamboesbaai") {
    return Section::kSemiCoastal;
  }
  if (position_label == "inland" || position_label == "erts" || position_label == "halfweg") {
    return Section::kInland;
  }
  constexpr std::string_view prefix = "loop_";
  if (position_label.substr(0, prefix.size()) == prefix) {
    std::string_view digits = position_label.substr(prefix.size());
    if (!digits.empty() && digits.size() <= 2) {
      int value = 0;
      bool numeric = true;
      for (char c : digits) {
        if (c < '0' || c > '9') {
          numeric = false;
          break;
        }
        value = value * 10 + (c - '0');
      }
      if (numeric && value <= 21) {
        if (value < 3) return Section::kCoastal;
        if (value < 10) return Section::kSemiCoastal;
        return Section::kInland;
      }
    }
  }
  throw EvidenceError("unknown position label '" + std::string(position_label) +
                      "' (expected a section name, loop_0..loop_21, or a named yard or loop)");
}

}  // namespace railrisk
