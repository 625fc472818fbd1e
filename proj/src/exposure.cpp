#include "railrisk/exposure.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "railrisk/error.hpp"

namespace railrisk {

namespace {

void strip_carriage_return(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

}  // namespace

void ScheduleConfig::validate() const {
  if (!std::isfinite(trains_per_day) || trains_per_day <= 0.0) {
    throw ConstructionError("trains_per_day must be a positive finite number");
  }
  if (period_days() < 1) {
    throw ConstructionError("schedule period [" + format_date(period_start) + ", " +
                            format_date(period_end) + ") is empty");
  }
}

std::vector<ExposureRecord> parse_exposures(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) {
    throw ParseError(1, "missing header line");
  }
  strip_carriage_return(line);
  if (line != kExposureCsvHeader) {
    throw ParseError(1, "header must be exactly '" + std::string(kExposureCsvHeader) + "'");
  }

  std::vector<ExposureRecord> records;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    strip_carriage_return(line);
    std::vector<std::string> fields = split_fields(line);
    if (fields.size() != 4) {
      throw ParseError(line_no, "expected 4 comma-separated fields, got " +
                                    std::to_string(fields.size()));
    }
    ExposureRecord rec;
    rec.train_id = fields[0];
    if (rec.train_id.empty()) {
      throw ParseError(line_no, "train_id must be nonempty");
    }
    try {
      rec.timestamp = parse_datetime(fields[1]);
      rec.section = section_from_label(fields[2]);
    } catch (const Error& e) {
      throw ParseError(line_no, e.what());
    }
    if (fields[3] == "0") {
      rec.broke = false;
    } else if (fields[3] == "1") {
      rec.broke = true;
    } else {
      throw ParseError(line_no, "broke must be 0 or 1, got '" + fields[3] + "'");
    }
    records.push_back(std::move(rec));
  }
  return records;
}

std::vector<ExposureRecord> parse_exposures_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open '" + path + "' for reading");
  }
  return parse_exposures(in);
}

void write_exposures_csv(std::ostream& out, const std::vector<ExposureRecord>& records) {
  out << kExposureCsvHeader << "\n";
  for (const auto& rec : records) {
    out << rec.train_id << "," << format_datetime(rec.timestamp) << ","
        << section_label(rec.section) << "," << (rec.broke ? '1' : '0') << "\n";
  }
}

CountTable build_counts(const std::vector<ExposureRecord>& breaks, const ScheduleConfig& schedule,
                        const BucketMaps& maps) {
  schedule.validate();
  maps.validate();

  const long start_day = day_number(schedule.period_start);
  const long days = schedule.period_days();
  std::array<std::int64_t, kSeasonCount> season_days{};
  for (long dn = start_day; dn < start_day + days; ++dn) {
    Date d = date_from_day_number(dn);
    season_days[static_cast<std::size_t>(assign_season(d.month, maps))] += 1;
  }
  std::array<std::int64_t, kTimeBucketCount> bucket_hours = {
      maps.hours_in(TimeBucket::kMorning), maps.hours_in(TimeBucket::kNotMorning)};

  // Integer largest-remainder apportionment of one section's exposures over
  // the 8 (season, bucket) cells. Quotas are the exact rationals
  // per_section * season_days * bucket_hours / (days * 24), so floors plus
  // leftover land exactly on the per-section total every time.
  const std::int64_t per_section = std::llround(schedule.trains_per_day * static_cast<double>(days));
  const std::int64_t denom = static_cast<std::int64_t>(days) * 24;
  constexpr std::size_t kTimeCells = kSeasonCount * kTimeBucketCount;
  std::array<std::int64_t, kTimeCells> cell_total{};
  std::array<std::int64_t, kTimeCells> remainder{};
  std::int64_t assigned = 0;
  for (std::size_t s = 0; s < kSeasonCount; ++s) {
    for (std::size_t t = 0; t < kTimeBucketCount; ++t) {
      std::size_t cell = s * kTimeBucketCount + t;
      std::int64_t numer = per_section * season_days[s] * bucket_hours[t];
      cell_total[cell] = numer / denom;
      remainder[cell] = numer % denom;
      assigned += cell_total[cell];
    }
  }
  std::int64_t leftover = per_section - assigned;
  std::array<std::size_t, kTimeCells> order{};
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (remainder[a] != remainder[b]) return remainder[a] > remainder[b];
    return a < b;
  });
  for (std::int64_t i = 0; i < leftover; ++i) {
    cell_total[order[static_cast<std::size_t>(i)]] += 1;
  }

  CountTable counts;
  for (const auto& rec : breaks) {
    if (!rec.broke) {
      throw ConstructionError("build_counts expects break records only; train '" + rec.train_id +
                              "' has broke=0");
    }
    if (!schedule.contains(rec.timestamp.date)) {
      throw InconsistencyError("break at " + format_datetime(rec.timestamp) +
                               " is outside the schedule period [" +
                               format_date(schedule.period_start) + ", " +
                               format_date(schedule.period_end) + ")");
    }
    Season s = assign_season(rec.timestamp.date.month, maps);
    TimeBucket t = assign_time_bucket(rec.timestamp.hour, maps);
    counts.at(s, t, rec.section, true) += 1;
  }

  for (std::size_t s = 0; s < kSeasonCount; ++s) {
    for (std::size_t t = 0; t < kTimeBucketCount; ++t) {
      std::int64_t total = cell_total[s * kTimeBucketCount + t];
      for (std::size_t l = 0; l < kSectionCount; ++l) {
        auto season = static_cast<Season>(s);
        auto bucket = static_cast<TimeBucket>(t);
        auto section = static_cast<Section>(l);
        std::int64_t broke = counts.at(season, bucket, section, true);
        if (broke > total) {
          throw InconsistencyError("cell " + describe_cell(season, bucket, section) + " holds " +
                                   std::to_string(broke) + " breaks but only " +
                                   std::to_string(total) + " scheduled exposures");
        }
        counts.at(season, bucket, section, false) = total - broke;
      }
    }
  }
  return counts;
}

}  // namespace railrisk
