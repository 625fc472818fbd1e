#include "railrisk/rail_model.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "railrisk/elimination.hpp"
#include "railrisk/error.hpp"

namespace railrisk {

namespace {

const Variable* canonical_by_name(const std::string& name) {
  if (name == kSeasonName) return &season_variable();
  if (name == kTimeName) return &time_variable();
  if (name == kLocationName) return &location_variable();
  if (name == kBreakName) return &break_variable();
  return nullptr;
}

// Variables that reuse a canonical name must also use the canonical state
// list; otherwise downstream lookups by label would silently shift cells.
void require_canonical_states(const Factor& f) {
  for (const auto& v : f.scope()) {
    const Variable* canon = canonical_by_name(v.name());
    if (canon != nullptr && v != *canon) {
      throw StructureError("variable '" + v.name() +
                           "' must use the canonical state list in its canonical order");
    }
  }
}

Dag canonical_dag() {
  std::string s(kSeasonName), t(kTimeName), l(kLocationName), r(kBreakName);
  return Dag({s, t, l, r}, {{s, r}, {t, r}, {l, r}});
}

BayesNet build_net(Factor p_season, Factor p_time, Factor p_location, Factor break_cpt) {
  require_canonical_states(p_season);
  require_canonical_states(p_time);
  require_canonical_states(p_location);
  require_canonical_states(break_cpt);
  std::map<std::string, Factor> cpts;
  cpts.emplace(std::string(kSeasonName), std::move(p_season));
  cpts.emplace(std::string(kTimeName), std::move(p_time));
  cpts.emplace(std::string(kLocationName), std::move(p_location));
  cpts.emplace(std::string(kBreakName), std::move(break_cpt));
  return BayesNet(canonical_dag(), std::move(cpts));
}

BayesNet check_canonical(BayesNet net) {
  const Dag& dag = net.dag();
  const std::array<std::string_view, 4> expected_vertices = {kSeasonName, kTimeName, kLocationName,
                                                             kBreakName};
  bool vertices_ok = dag.vertices().size() == expected_vertices.size();
  for (auto name : expected_vertices) {
    vertices_ok = vertices_ok && dag.has_vertex(name);
  }
  if (!vertices_ok) {
    throw StructureError(
        "model must have exactly the vertices season, time_of_day, location, rail_break");
  }
  bool edges_ok = dag.edges().size() == 3;
  for (auto parent : {kSeasonName, kTimeName, kLocationName}) {
    bool found = false;
    for (const auto& [p, c] : dag.edges()) {
      if (p == parent && c == kBreakName) found = true;
    }
    edges_ok = edges_ok && found;
  }
  if (!edges_ok) {
    throw StructureError(
        "model must have exactly the edges season -> rail_break, time_of_day -> rail_break, "
        "location -> rail_break");
  }
  for (auto name : expected_vertices) {
    if (net.variable(name) != *canonical_by_name(std::string(name))) {
      throw StructureError("variable '" + std::string(name) +
                           "' must use the canonical state list in its canonical order");
    }
  }
  return net;
}

}  // namespace

RailBreakModel::RailBreakModel(Factor p_season, Factor p_time, Factor p_location, Factor break_cpt)
    : net_(build_net(std::move(p_season), std::move(p_time), std::move(p_location),
                     std::move(break_cpt))) {}

RailBreakModel::RailBreakModel(BayesNet net) : net_(check_canonical(std::move(net))) {}

Factor RailBreakModel::joint() const {
  return reordered(net_.joint(), {std::string(kSeasonName), std::string(kTimeName),
                                  std::string(kLocationName), std::string(kBreakName)});
}

double RailBreakModel::risk(const Assignment& evidence) const {
  for (const auto& [name, state] : evidence) {
    if (name != kSeasonName && name != kTimeName && name != kLocationName) {
      throw EvidenceError("risk evidence must be over season, time_of_day, or location; got '" +
                          name + "'");
    }
    net_.variable(name).index_of(state);  // validates the state label
  }
  Factor posterior = eliminate(net_.factors(), {std::string(kBreakName)}, evidence);
  return posterior.at({{std::string(kBreakName), std::string(kBreakState)}});
}

double RailBreakModel::trip_risk(const std::vector<TripLeg>& legs,
                                 TripAggregation aggregation) const {
  if (legs.empty()) {
    throw ConstructionError("a trip needs at least one leg");
  }
  for (std::size_t i = 0; i < legs.size(); ++i) {
    for (std::size_t j = i + 1; j < legs.size(); ++j) {
      if (legs[i].section == legs[j].section) {
        throw ConstructionError("trip legs repeat section '" +
                                std::string(section_label(legs[i].section)) + "'");
      }
    }
  }
  double additive = 0.0;
  double survival = 1.0;
  for (const auto& leg : legs) {
    Assignment cell{{std::string(kSeasonName), std::string(season_label(leg.season))},
                    {std::string(kTimeName), std::string(time_bucket_label(leg.time))},
                    {std::string(kLocationName), std::string(section_label(leg.section))},
                    {std::string(kBreakName), std::string(kBreakState)}};
    double contribution = p_location().at(cell) * break_cpt().at(cell);
    additive += contribution;
    survival *= 1.0 - contribution;
  }
  return aggregation == TripAggregation::kAdditive ? additive : 1.0 - survival;
}

double RailBreakModel::risk_ratio(const Assignment& evidence_a,
                                  const Assignment& evidence_b) const {
  double denominator = risk(evidence_b);
  if (denominator <= 0.0) {
    throw DegenerateError("risk ratio denominator is zero");
  }
  return risk(evidence_a) / denominator;
}

namespace {

void require_fit_inputs(const CountTable& counts, double alpha) {
  if (!std::isfinite(alpha) || alpha < 0.0) {
    throw ConstructionError("smoothing alpha must be a finite nonnegative number");
  }
  for (auto c : counts.cells()) {
    if (c < 0) {
      throw ConstructionError("count table entries must be nonnegative");
    }
  }
}

}  // namespace

Factor fit_full_joint(const CountTable& counts, double alpha) {
  require_fit_inputs(counts, alpha);
  const double total = static_cast<double>(counts.total());
  if (counts.total() == 0 && alpha == 0.0) {
    throw DegenerateError("cannot fit a joint distribution from an all-zero count table "
                          "without smoothing");
  }
  const double denom = total + alpha * static_cast<double>(CountTable::kCells);
  std::vector<double> values;
  values.reserve(CountTable::kCells);
  for (auto c : counts.cells()) {
    values.push_back((static_cast<double>(c) + alpha) / denom);
  }
  // The count table layout is row major over (season, time, location,
  // outcome) with the outcome fastest — exactly this scope's layout.
  return Factor({season_variable(), time_variable(), location_variable(), break_variable()},
                std::move(values));
}

RailBreakModel fit_factorized(const CountTable& counts, double alpha) {
  require_fit_inputs(counts, alpha);
  const std::int64_t total = counts.total();
  if (total == 0) {
    throw DegenerateError("cannot fit marginals from an all-zero count table");
  }

  std::array<std::int64_t, kSeasonCount> season_count{};
  std::array<std::int64_t, kTimeBucketCount> time_count{};
  std::array<std::int64_t, kSectionCount> section_count{};
  for (std::size_t s = 0; s < kSeasonCount; ++s) {
    for (std::size_t t = 0; t < kTimeBucketCount; ++t) {
      for (std::size_t l = 0; l < kSectionCount; ++l) {
        for (bool broke : {false, true}) {
          std::int64_t c = counts.at(static_cast<Season>(s), static_cast<TimeBucket>(t),
                                     static_cast<Section>(l), broke);
          season_count[s] += c;
          time_count[t] += c;
          section_count[l] += c;
        }
      }
    }
  }

  auto share = [&](std::int64_t c) { return static_cast<double>(c) / static_cast<double>(total); };
  std::vector<double> p_season, p_time, p_location;
  for (auto c : season_count) p_season.push_back(share(c));
  for (auto c : time_count) p_time.push_back(share(c));
  for (auto c : section_count) p_location.push_back(share(c));

  std::vector<double> cpt;
  cpt.reserve(CountTable::kCells);
  for (std::size_t s = 0; s < kSeasonCount; ++s) {
    for (std::size_t t = 0; t < kTimeBucketCount; ++t) {
      for (std::size_t l = 0; l < kSectionCount; ++l) {
        auto season = static_cast<Season>(s);
        auto bucket = static_cast<TimeBucket>(t);
        auto section = static_cast<Section>(l);
        std::int64_t broke = counts.at(season, bucket, section, true);
        std::int64_t exposures = broke + counts.at(season, bucket, section, false);
        if (exposures == 0 && alpha == 0.0) {
          throw FitError("conditional for cell " + describe_cell(season, bucket, section) +
                         " is undefined: no exposures and no smoothing");
        }
        double denom = static_cast<double>(exposures) + 2.0 * alpha;
        double p_break = (static_cast<double>(broke) + alpha) / denom;
        cpt.push_back(1.0 - p_break);
        cpt.push_back(p_break);
      }
    }
  }

  return RailBreakModel(
      Factor({season_variable()}, std::move(p_season)),
      Factor({time_variable()}, std::move(p_time)),
      Factor({location_variable()}, std::move(p_location)),
      Factor({season_variable(), time_variable(), location_variable(), break_variable()},
             std::move(cpt)));
}

std::vector<double> normalized_percentage(const std::vector<double>& break_share,
                                          const std::vector<double>& duration_share) {
  constexpr double kShareTol = 1e-6;
  if (break_share.size() != duration_share.size() || break_share.empty()) {
    throw ConstructionError("share lists must be nonempty and the same length");
  }
  double break_total = 0.0, duration_total = 0.0;
  for (double b : break_share) {
    if (!std::isfinite(b) || b < 0.0) {
      throw ConstructionError("break shares must be nonnegative finite numbers");
    }
    break_total += b;
  }
  for (double d : duration_share) {
    if (!std::isfinite(d) || d <= 0.0) {
      throw DegenerateError("duration shares must be strictly positive");
    }
    duration_total += d;
  }
  if (std::abs(break_total - 1.0) > kShareTol) {
    throw ConstructionError("break shares must sum to 1");
  }
  if (std::abs(duration_total - 1.0) > kShareTol) {
    throw ConstructionError("duration shares must sum to 1");
  }

  std::vector<double> out;
  out.reserve(break_share.size());
  double total = 0.0;
  for (std::size_t i = 0; i < break_share.size(); ++i) {
    double ratio = break_share[i] / duration_share[i];
    out.push_back(ratio);
    total += ratio;
  }
  for (double& v : out) v /= total;
  return out;
}

}  // namespace railrisk
