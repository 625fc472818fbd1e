#include "railrisk/reference.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <random>

#include "railrisk/elimination.hpp"
#include "railrisk/error.hpp"

namespace railrisk {

Date reference_period_start() { return Date{2014, 4, 1}; }
Date reference_period_end() { return Date{2015, 4, 1}; }

const std::vector<AnchorSpec>& reference_anchors() {
  static const std::vector<AnchorSpec> anchors = {
      {"overall_risk", 0.019, 0.001},
      {"inland_winter", 0.024, 0.002},
      {"inland_late_winter", 0.014, 0.002},
      {"inland_early_summer", 0.003, 0.001},
      {"coastal_off_peak", 0.007, 0.001},
      {"inland_morning", 0.030, 0.002},
      {"inland_winter_morning", 0.054, 0.003},
      {"coastal_off_peak_early_summer", 0.0007, 0.0002},
      {"location_ratio", 10.0, 1.5},
      {"morning_break_share", 0.56, 0.02},
  };
  return anchors;
}

namespace {

std::string str(std::string_view v) { return std::string(v); }

double conditional_risk(const std::vector<Factor>& factors, const Assignment& evidence) {
  Factor posterior = eliminate(factors, {str(kBreakName)}, evidence);
  return posterior.at({{str(kBreakName), str(kBreakState)}});
}

}  // namespace

double evaluate_anchor(const std::vector<Factor>& factors, const std::string& name) {
  const std::string season = str(kSeasonName), time = str(kTimeName), location = str(kLocationName);
  if (name == "overall_risk") {
    return conditional_risk(factors, {});
  }
  if (name == "inland_winter") {
    return conditional_risk(factors, {{location, "inland"}, {season, "winter"}});
  }
  if (name == "inland_late_winter") {
    return conditional_risk(factors, {{location, "inland"}, {season, "late_winter"}});
  }
  if (name == "inland_early_summer") {
    return conditional_risk(factors, {{location, "inland"}, {season, "early_summer"}});
  }
  if (name == "coastal_off_peak") {
    return conditional_risk(factors, {{location, "coastal"}, {time, "not_morning"}});
  }
  if (name == "inland_morning") {
    return conditional_risk(factors, {{location, "inland"}, {time, "morning"}});
  }
  if (name == "inland_winter_morning") {
    return conditional_risk(factors,
                            {{location, "inland"}, {season, "winter"}, {time, "morning"}});
  }
  if (name == "coastal_off_peak_early_summer") {
    return conditional_risk(factors,
                            {{location, "coastal"}, {time, "not_morning"}, {season, "early_summer"}});
  }
  if (name == "location_ratio") {
    double coastal = conditional_risk(factors, {{location, "coastal"}});
    if (coastal <= 0.0) {
      throw DegenerateError("coastal risk is zero; the location ratio is undefined");
    }
    return conditional_risk(factors, {{location, "inland"}}) / coastal;
  }
  if (name == "morning_break_share") {
    Factor posterior = eliminate(factors, {time}, {{str(kBreakName), str(kBreakState)}});
    return posterior.at({{time, "morning"}});
  }
  throw ScopeError("unknown anchor '" + name + "'");
}

AnchorReport check_anchors(const std::vector<Factor>& factors) {
  AnchorReport report;
  report.all_pass = true;
  for (const auto& spec : reference_anchors()) {
    AnchorCheck check;
    check.spec = spec;
    check.actual = evaluate_anchor(factors, spec.name);
    check.pass = std::abs(check.actual - spec.target) <= spec.tolerance;
    report.all_pass = report.all_pass && check.pass;
    report.checks.push_back(std::move(check));
  }
  return report;
}

AnchorReport check_anchors(const RailBreakModel& model) {
  return check_anchors(model.net().factors());
}

RailBreakModel calibrate_reference() {
  const BucketMaps maps = BucketMaps::defaults();

  // Context marginals. Season shares are the day counts of the reference
  // year; time shares are the bucket hour counts; every exposure is equally
  // likely to be in any of the three sections.
  std::array<double, kSeasonCount> p_season{};
  {
    const long start = day_number(reference_period_start());
    const long end = day_number(reference_period_end());
    for (long dn = start; dn < end; ++dn) {
      Date d = date_from_day_number(dn);
      p_season[static_cast<std::size_t>(assign_season(d.month, maps))] += 1.0;
    }
    for (double& v : p_season) v /= static_cast<double>(end - start);
  }
  const double pt0 = static_cast<double>(maps.hours_in(TimeBucket::kMorning)) / 24.0;
  const double pt1 = 1.0 - pt0;

  constexpr std::size_t ES = 0, LS = 1, W = 2, LW = 3;
  constexpr std::size_t T0 = 0, T1 = 1;
  constexpr std::size_t C = 0, SC = 1, I = 2;

  // The calibration targets (see reference_anchors()).
  constexpr double kOverall = 0.019;
  constexpr double kInlandWinter = 0.024;
  constexpr double kInlandLateWinter = 0.014;
  constexpr double kInlandEarlySummer = 0.003;
  constexpr double kInlandMorning = 0.030;
  constexpr double kInlandWinterMorning = 0.054;
  constexpr double kCoastalOffPeakEarlySummer = 0.0007;
  constexpr double kLocationRatio = 10.0;
  constexpr double kMorningShare = 0.56;

  // Seasonal shape: the three inland season targets plus an interpolated
  // late-summer level (between its early-summer and late-winter
  // neighbours), rescaled so its season-weighted mean is one.
  const std::array<double, kSeasonCount> shape_raw = {kInlandEarlySummer, 0.0085, kInlandWinter,
                                                      kInlandLateWinter};
  double shape_mean = 0.0;
  for (std::size_t s = 0; s < kSeasonCount; ++s) shape_mean += p_season[s] * shape_raw[s];
  std::array<double, kSeasonCount> f_season{};
  for (std::size_t s = 0; s < kSeasonCount; ++s) f_season[s] = shape_raw[s] / shape_mean;

  double q[kSeasonCount][kTimeBucketCount][kSectionCount] = {};

  // Inland: the winter-morning cell and the morning column are pinned
  // directly; the remaining morning cells follow the seasonal shape, and
  // the not-morning cells are solved so each season's time-weighted mean
  // hits its target exactly. Late summer (unreported) is interpolated
  // geometrically between its neighbours.
  q[W][T0][I] = kInlandWinterMorning;
  const double beta = (kInlandMorning - p_season[W] * q[W][T0][I]) /
                      (p_season[ES] * f_season[ES] + p_season[LS] * f_season[LS] +
                       p_season[LW] * f_season[LW]);
  q[ES][T0][I] = beta * f_season[ES];
  q[LS][T0][I] = beta * f_season[LS];
  q[LW][T0][I] = beta * f_season[LW];
  q[W][T1][I] = (kInlandWinter - pt0 * q[W][T0][I]) / pt1;
  q[LW][T1][I] = (kInlandLateWinter - pt0 * q[LW][T0][I]) / pt1;
  q[ES][T1][I] = (kInlandEarlySummer - pt0 * q[ES][T0][I]) / pt1;
  q[LS][T1][I] = std::sqrt(q[ES][T1][I] * q[LW][T1][I]);
  std::array<double, kSeasonCount> inland_mean{};
  double p_inland = 0.0;
  for (std::size_t s = 0; s < kSeasonCount; ++s) {
    inland_mean[s] = pt0 * q[s][T0][I] + pt1 * q[s][T1][I];
    p_inland += p_season[s] * inland_mean[s];
  }

  // Coastal: the section mean is pinned by the location ratio and the
  // early-summer off-peak cell by its anchor. The remaining off-peak cells
  // follow a gentler seasonal profile (coastal climate swings less than
  // inland), and the morning cells are that profile rescaled to make the
  // section mean exact. The off-peak season mean this forces is the one
  // anchor the system cannot absorb; check_anchors reports it.
  const double p_coastal = p_inland / kLocationRatio;
  const std::array<double, kSeasonCount> coastal_shape = {1.0, 1.30, 1.95, 1.60};
  for (std::size_t s = 0; s < kSeasonCount; ++s) {
    q[s][T1][C] = kCoastalOffPeakEarlySummer * coastal_shape[s];
  }
  double coastal_off_peak_mean = 0.0;
  for (std::size_t s = 0; s < kSeasonCount; ++s) {
    coastal_off_peak_mean += p_season[s] * q[s][T1][C];
  }
  const double coastal_morning_col = (p_coastal - pt1 * coastal_off_peak_mean) / pt0;
  for (std::size_t s = 0; s < kSeasonCount; ++s) {
    q[s][T0][C] = q[s][T1][C] * (coastal_morning_col / coastal_off_peak_mean);
  }

  // Semi-coastal (never reported): absorbs whatever the overall-risk and
  // morning-share anchors still require, distributed over seasons by the
  // same shape as inland.
  const double p_semi = 3.0 * kOverall - p_coastal - p_inland;
  const double semi_morning_col =
      kMorningShare * kOverall * 3.0 / pt0 - coastal_morning_col - kInlandMorning;
  const double semi_off_peak_mean = (p_semi - pt0 * semi_morning_col) / pt1;
  for (std::size_t s = 0; s < kSeasonCount; ++s) {
    q[s][T0][SC] = semi_morning_col * f_season[s];
    q[s][T1][SC] = semi_off_peak_mean * f_season[s];
  }

  std::vector<double> cpt;
  cpt.reserve(CountTable::kCells);
  for (std::size_t s = 0; s < kSeasonCount; ++s) {
    for (std::size_t t = 0; t < kTimeBucketCount; ++t) {
      for (std::size_t l = 0; l < kSectionCount; ++l) {
        cpt.push_back(1.0 - q[s][t][l]);
        cpt.push_back(q[s][t][l]);
      }
    }
  }

  return RailBreakModel(
      Factor({season_variable()}, std::vector<double>(p_season.begin(), p_season.end())),
      Factor({time_variable()}, {pt0, pt1}),
      Factor({location_variable()}, {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0}),
      Factor({season_variable(), time_variable(), location_variable(), break_variable()},
             std::move(cpt)));
}

std::vector<ExposureRecord> sample_exposures(const RailBreakModel& model, std::size_t n,
                                             std::uint64_t seed, const BucketMaps& maps,
                                             Date period_start, Date period_end) {
  if (n == 0) {
    throw ConstructionError("sample count must be positive");
  }
  maps.validate();
  const long start_day = day_number(period_start);
  const long end_day = day_number(period_end);
  if (end_day <= start_day) {
    throw ConstructionError("sampling period [" + format_date(period_start) + ", " +
                            format_date(period_end) + ") is empty");
  }

  std::array<std::vector<Date>, kSeasonCount> season_days;
  for (long dn = start_day; dn < end_day; ++dn) {
    Date d = date_from_day_number(dn);
    season_days[static_cast<std::size_t>(assign_season(d.month, maps))].push_back(d);
  }
  const std::array<std::vector<int>, kTimeBucketCount> bucket_hours = {
      maps.hours_of(TimeBucket::kMorning), maps.hours_of(TimeBucket::kNotMorning)};

  const std::vector<double>& p_season = model.p_season().values();
  const std::vector<double>& p_time = model.p_time().values();
  const std::vector<double>& p_location = model.p_location().values();
  const std::vector<double>& cpt = model.break_cpt().values();

  // All randomness is reduced to 53-bit uniform doubles from a mt19937_64
  // stream, consumed in a fixed order per record. The generator and the
  // mapping below are both fully specified, so output is bit-reproducible
  // across platforms and standard libraries.
  std::mt19937_64 rng(seed);
  auto unit = [&rng]() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  auto pick = [&unit](const std::vector<double>& probs) {
    double u = unit();
    double cumulative = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
      cumulative += probs[i];
      if (u < cumulative) return i;
    }
    return probs.size() - 1;
  };
  auto pick_index = [&unit](std::size_t count) {
    auto i = static_cast<std::size_t>(unit() * static_cast<double>(count));
    return i < count ? i : count - 1;
  };

  std::vector<ExposureRecord> records;
  records.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t s = pick(p_season);
    std::size_t t = pick(p_time);
    std::size_t l = pick(p_location);
    std::size_t cell = ((s * kTimeBucketCount + t) * kSectionCount + l) * kBreakStateCount + 1;
    bool broke = unit() < cpt[cell];

    const std::vector<Date>& days = season_days[s];
    if (days.empty()) {
      throw InconsistencyError("sampling period contains no days of season '" +
                               std::string(season_label(static_cast<Season>(s))) + "'");
    }
    Date day = days[pick_index(days.size())];
    int hour = bucket_hours[t][pick_index(bucket_hours[t].size())];
    int minute = static_cast<int>(pick_index(60));
    int second = static_cast<int>(pick_index(60));

    char id[24];
    std::snprintf(id, sizeof(id), "T%06zu", i + 1);
    records.push_back(ExposureRecord{id, DateTime{day, hour, minute, second},
                                     static_cast<Section>(l), broke});
  }
  return records;
}

}  // namespace railrisk
