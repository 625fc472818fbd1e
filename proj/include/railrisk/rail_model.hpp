#pragma once

#include <vector>

#include "railrisk/bayes_net.hpp"
#include "railrisk/factor.hpp"
#include "railrisk/rail_domain.hpp"

namespace railrisk {

// One section traversal within a trip, with its time and season context.
struct TripLeg {
  Section section = Section::kCoastal;
  TimeBucket time = TimeBucket::kMorning;
  Season season = Season::kWinter;
};

// How per-leg break probabilities combine into a trip figure. Additive is
// the reference behaviour (a sum of per-section contributions, consistent
// with the overall marginal); the complement product treats legs as
// independent survival trials and is provided for comparison only.
enum class TripAggregation {
  kAdditive,
  kComplementProduct,
};

// The four-variable network for per-exposure rail-break risk: season, time
// of day, and location are parentless, and the break indicator depends on
// all three. Immutable once built; queries are pure.
class RailBreakModel {
 public:
  // Builds the network from the three marginals and the break CPT. The
  // marginals must be distributions over the canonical variables; the CPT
  // must cover (season, time_of_day, location, rail_break) in any scope
  // order with rows summing to one.
  RailBreakModel(Factor p_season, Factor p_time, Factor p_location, Factor break_cpt);

  // Adopts an existing network after checking it has exactly the canonical
  // structure: vertices season, time_of_day, location, rail_break; edges
  // from each context variable to rail_break and no others; canonical
  // state spaces. Throws StructureError otherwise.
  explicit RailBreakModel(BayesNet net);

  const BayesNet& net() const { return net_; }
  const Factor& p_season() const { return net_.cpt(kSeasonName); }
  const Factor& p_time() const { return net_.cpt(kTimeName); }
  const Factor& p_location() const { return net_.cpt(kLocationName); }
  // Scope (season, time_of_day, location, rail_break), rail_break fastest.
  const Factor& break_cpt() const { return net_.cpt(kBreakName); }

  // Joint distribution over (season, time_of_day, location, rail_break).
  Factor joint() const;

  // p(rail_break = break | evidence) for evidence over any subset of
  // {season, time_of_day, location}. Empty evidence gives the overall
  // per-exposure risk. Throws EvidenceError for other evidence variables
  // or unknown states, ImpossibleEvidenceError on zero-mass evidence.
  double risk(const Assignment& evidence) const;

  // Trip figure over the given legs. Each leg contributes its joint
  // probability of breaking in its section, p(break, location | time,
  // season) = p(location) * p(break | season, time, location). Summing the
  // additive form over all three sections at the model's own season/time
  // mix reproduces the overall risk exactly. Legs must be nonempty and
  // cover distinct sections; throws ConstructionError otherwise.
  double trip_risk(const std::vector<TripLeg>& legs,
                   TripAggregation aggregation = TripAggregation::kAdditive) const;

  // risk(a) / risk(b). Throws DegenerateError when risk(b) is zero.
  double risk_ratio(const Assignment& evidence_a, const Assignment& evidence_b) const;

 private:
  BayesNet net_;
};

// Direct normalization of the 48-cell count table into a joint
// distribution over (season, time_of_day, location, rail_break):
// (count + alpha) / (total + 48 alpha). Throws DegenerateError when all
// counts are zero and alpha is zero, ConstructionError on negative counts
// or alpha.
Factor fit_full_joint(const CountTable& counts, double alpha);

// Estimation respecting the network structure: season, time, and location
// marginals from their (unsmoothed) count shares, and the break CPT from
// per-cell break fractions (breaks + alpha) / (exposures + 2 alpha).
// Throws DegenerateError when the table is empty and FitError, naming the
// cell, when a cell has zero exposures and alpha is zero.
RailBreakModel fit_factorized(const CountTable& counts, double alpha);

// Rescales outcome shares by the calendar time they occupy: out_i is
// proportional to break_share_i / duration_share_i, normalized to sum to
// one. Both inputs must be equal-length distributions (sum 1 within 1e-6);
// duration entries must be positive. Throws DegenerateError on a zero or
// negative duration share, ConstructionError otherwise.
std::vector<double> normalized_percentage(const std::vector<double>& break_share,
                                          const std::vector<double>& duration_share);

}  // namespace railrisk
