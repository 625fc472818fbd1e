#include "railrisk/rail_domain.hpp"

#include <sstream>

#include "railrisk/error.hpp"

namespace railrisk {

namespace {

constexpr std::array<std::string_view, kSeasonCount> kSeasonLabels = {
    "early_summer", "late_summer", "winter", "late_winter"};
constexpr std::array<std::string_view, kTimeBucketCount> kTimeLabels = {"morning", "not_morning"};
constexpr std::array<std::string_view, kSectionCount> kSectionLabels = {"coastal", "semi_coastal",
                                                                        "inland"};

std::vector<std::string> to_strings(const auto& labels) {
  std::vector<std::string> result;
  for (auto label : labels) result.emplace_back(label);
  return result;
}

}  // namespace

std::string_view season_label(Season s) { return kSeasonLabels[static_cast<std::size_t>(s)]; }
std::string_view time_bucket_label(TimeBucket t) {
  return kTimeLabels[static_cast<std::size_t>(t)];
}
std::string_view section_label(Section l) { return kSectionLabels[static_cast<std::size_t>(l)]; }

Season season_from_label(std::string_view label) {
  for (std::size_t i = 0; i < kSeasonLabels.size(); ++i) {
    if (kSeasonLabels[i] == label) return static_cast<Season>(i);
  }
  throw EvidenceError("unknown season '" + std::string(label) +
                      "' (expected early_summer, late_summer, winter, or late_winter)");
}

TimeBucket time_bucket_from_label(std::string_view label) {
  for (std::size_t i = 0; i < kTimeLabels.size(); ++i) {
    if (kTimeLabels[i] == label) return static_cast<TimeBucket>(i);
  }
  throw EvidenceError("unknown time bucket '" + std::string(label) +
                      "' (expected morning or not_morning)");
}

Section section_from_label(std::string_view label) {
  for (std::size_t i = 0; i < kSectionLabels.size(); ++i) {
    if (kSectionLabels[i] == label) return static_cast<Section>(i);
  }
  throw EvidenceError("unknown section '" + std::string(label) +
                      "' (expected coastal, semi_coastal, or inland)");
}

const Variable& season_variable() {
  static const Variable v(std::string(kSeasonName), to_strings(kSeasonLabels));
  return v;
}

const Variable& time_variable() {
  static const Variable v(std::string(kTimeName), to_strings(kTimeLabels));
  return v;
}

const Variable& location_variable() {
  static const Variable v(std::string(kLocationName), to_strings(kSectionLabels));
  return v;
}

const Variable& break_variable() {
  static const Variable v(std::string(kBreakName),
                          {std::string(kNoBreakState), std::string(kBreakState)});
  return v;
}

std::int64_t CountTable::total() const {
  std::int64_t sum = 0;
  for (auto c : cells_) sum += c;
  return sum;
}

std::string describe_cell(Season s, TimeBucket t, Section l) {
  std::ostringstream out;
  out << "(" << kSeasonName << "=" << season_label(s) << ", " << kTimeName << "="
      << time_bucket_label(t) << ", " << kLocationName << "=" << section_label(l) << ")";
  return out.str();
}

}  // namespace railrisk
