// Command-line front end for the rail-break risk pipeline: generate
// synthetic exposure data, fit models from exposure CSVs, run risk queries,
// print scenario reports, and validate a model against the calibration
// anchors. Exit codes: 0 success, 1 a semantic/validation failure, 2 a
// usage, I/O, or schema problem.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "railrisk/elimination.hpp"
#include "railrisk/error.hpp"
#include "railrisk/exposure.hpp"
#include "railrisk/model_io.hpp"
#include "railrisk/rail_model.hpp"
#include "railrisk/reference.hpp"
#include "railrisk/version.hpp"

namespace {

using nlohmann::json;
using namespace railrisk;

std::string str(std::string_view v) { return std::string(v); }

// Probabilities are printed with 4 significant digits; JSON output carries
// the full doubles.
std::string fmt4(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", value);
  return buf;
}

double risk_of(const std::vector<Factor>& factors, const Assignment& evidence) {
  Factor posterior = eliminate(factors, {str(kBreakName)}, evidence);
  return posterior.at({{str(kBreakName), str(kBreakState)}});
}

// report/query/validate only make sense against the four canonical
// variables; anything else is some other domain's model file.
void require_rail_domain(const std::vector<Factor>& factors) {
  for (const Variable* canon : {&season_variable(), &time_variable(), &location_variable(),
                                &break_variable()}) {
    bool found = false;
    for (const auto& f : factors) {
      if (f.has_variable(canon->name()) && f.variable(canon->name()) == *canon) found = true;
    }
    if (!found) {
      throw SchemaError("model does not cover the rail-break domain: missing variable '" +
                        canon->name() + "' with its canonical states");
    }
  }
}

struct FitConfig {
  bool auto_trains = false;   // trains_per_day given as "auto"
  double trains_per_day = 0;  // meaningful when auto_trains is false
  Date period_start;
  Date period_end;
  double alpha = 1.0;  // add-one smoothing unless the config overrides
  BucketMaps maps = BucketMaps::defaults();
};

FitConfig load_fit_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open config '" + path + "' for reading");
  }
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) {
    throw SchemaError("config must be a JSON object");
  }

  FitConfig config;
  if (!j.contains("trains_per_day")) {
    throw SchemaError("config is missing field 'trains_per_day'");
  }
  const json& trains = j["trains_per_day"];
  if (trains.is_string() && trains.get<std::string>() == "auto") {
    config.auto_trains = true;
  } else if (trains.is_number()) {
    config.trains_per_day = trains.get<double>();
    if (!(config.trains_per_day > 0) || !std::isfinite(config.trains_per_day)) {
      throw SchemaError("config field 'trains_per_day' must be positive");
    }
  } else {
    throw SchemaError("config field 'trains_per_day' must be a positive number or \"auto\"");
  }

  auto date_field = [&](const char* key) {
    if (!j.contains(key) || !j[key].is_string()) {
      throw SchemaError(std::string("config is missing string field '") + key + "'");
    }
    try {
      return parse_date(j[key].get<std::string>());
    } catch (const Error& e) {
      throw SchemaError(std::string("config field '") + key + "': " + e.what());
    }
  };
  config.period_start = date_field("period_start");
  config.period_end = date_field("period_end");
  if (day_number(config.period_end) <= day_number(config.period_start)) {
    throw SchemaError("config period is empty");
  }

  if (j.contains("alpha")) {
    if (!j["alpha"].is_number() || j["alpha"].get<double>() < 0) {
      throw SchemaError("config field 'alpha' must be a nonnegative number");
    }
    config.alpha = j["alpha"].get<double>();
  }
  if (j.contains("bucket_maps") && !j["bucket_maps"].is_null()) {
    config.maps = bucket_maps_from_json(j["bucket_maps"]);
  }
  return config;
}

// --- synth ---------------------------------------------------------------

int run_synth(std::size_t n, std::uint64_t seed, const std::string& out_path,
              const std::optional<std::string>& model_path, bool force) {
  if (!force && std::filesystem::exists(out_path)) {
    std::cerr << "error: output '" << out_path << "' exists; pass --force to overwrite\n";
    return 2;
  }

  std::optional<RailBreakModel> model;
  if (model_path.has_value()) {
    ModelDocument doc = load_model(*model_path);
    if (!doc.is_net()) {
      throw SchemaError("synth needs a bayes_net model (a joint table has no sampler form)");
    }
    model.emplace(doc.net());
  } else {
    model.emplace(calibrate_reference());
  }

  std::vector<ExposureRecord> records = sample_exposures(*model, n, seed);
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    throw IoError("cannot open '" + out_path + "' for writing");
  }
  write_exposures_csv(out, records);
  if (!out) {
    throw IoError("failed while writing '" + out_path + "'");
  }

  std::size_t breaks = 0;
  for (const auto& r : records) breaks += r.broke ? 1 : 0;
  std::cout << "wrote " << records.size() << " exposures (" << breaks << " breaks) to '"
            << out_path << "'\n";
  return 0;
}

// --- fit -----------------------------------------------------------------

int run_fit(const std::string& in_csv, const std::string& config_path, const std::string& mode,
            const std::optional<double>& alpha_flag, const std::string& out_path) {
  FitConfig config = load_fit_config(config_path);
  double alpha = alpha_flag.has_value() ? *alpha_flag : config.alpha;

  std::vector<ExposureRecord> records = parse_exposures_file(in_csv);
  if (records.empty()) {
    std::cerr << "error: no exposures in '" << in_csv << "'\n";
    return 1;
  }

  ScheduleConfig schedule;
  schedule.period_start = config.period_start;
  schedule.period_end = config.period_end;
  schedule.trains_per_day =
      config.auto_trains ? static_cast<double>(records.size()) /
                               (3.0 * static_cast<double>(schedule.period_days()))
                         : config.trains_per_day;

  std::vector<ExposureRecord> breaks;
  for (const auto& r : records) {
    if (r.broke) breaks.push_back(r);
  }
  CountTable counts = build_counts(breaks, schedule, config.maps);

  ModelProvenance provenance;
  provenance.source = in_csv;
  provenance.fit_mode = mode;
  provenance.alpha = alpha;
  provenance.schedule = schedule;
  provenance.bucket_maps = config.maps;

  std::optional<ModelDocument> doc;
  if (mode == "factorized") {
    RailBreakModel model = fit_factorized(counts, alpha);
    doc.emplace(ModelDocument::from_net(model.net(), provenance));
  } else {
    doc.emplace(ModelDocument::from_joint(fit_full_joint(counts, alpha), provenance));
  }
  save_model(*doc, out_path);

  std::cout << "fitted " << mode << " model from " << records.size() << " exposures ("
            << breaks.size() << " breaks)\n";
  std::cout << "p(" << kBreakName << "=" << kBreakState
            << ") = " << fmt4(risk_of(doc->factors(), {})) << "\n";
  std::cout << "saved model to '" << out_path << "'\n";
  return 0;
}

// --- query ---------------------------------------------------------------

Assignment evidence_from_flags(const std::optional<std::string>& season,
                               const std::optional<std::string>& time,
                               const std::optional<std::string>& location) {
  Assignment evidence;
  if (season.has_value()) {
    evidence[str(kSeasonName)] = str(season_label(season_from_label(*season)));
  }
  if (time.has_value()) {
    evidence[str(kTimeName)] = str(time_bucket_label(time_bucket_from_label(*time)));
  }
  if (location.has_value()) {
    // Accepts canonical section names as well as position labels along the
    // line (loop_0..loop_21 and the named yards/loops).
    evidence[str(kLocationName)] = str(section_label(assign_section(*location)));
  }
  return evidence;
}

std::string describe_evidence(const Assignment& evidence) {
  std::string out;
  for (const auto& [name, state] : evidence) {
    if (!out.empty()) out += ", ";
    out += name + "=" + state;
  }
  return out;
}

int run_query(const std::string& model_path, const std::optional<std::string>& season,
              const std::optional<std::string>& time, const std::optional<std::string>& location,
              bool as_json) {
  Assignment evidence = evidence_from_flags(season, time, location);
  ModelDocument doc = load_model(model_path);
  std::vector<Factor> factors = doc.factors();
  require_rail_domain(factors);

  double risk = risk_of(factors, evidence);
  if (as_json) {
    json out{{"tool_version", str(kToolVersion)},
             {"evidence", json::object()},
             {"risk", risk},
             {"provenance", provenance_to_json(doc.provenance())}};
    for (const auto& [name, state] : evidence) out["evidence"][name] = state;
    std::cout << out.dump(2) << "\n";
  } else if (evidence.empty()) {
    std::cout << "p(" << kBreakName << "=" << kBreakState << ") = " << fmt4(risk) << "\n";
  } else {
    std::cout << "p(" << kBreakName << "=" << kBreakState << " | " << describe_evidence(evidence)
              << ") = " << fmt4(risk) << "\n";
  }
  return 0;
}

// --- report --------------------------------------------------------------

// The identity behind the trip figure: summing the per-section joint
// contributions over all three sections, weighted by the model's own
// (season, time) distribution, must give back the overall risk.
double trip_sum_identity(const ModelDocument& doc) {
  if (doc.is_net()) {
    RailBreakModel model(doc.net());
    const auto& p_season = model.p_season().values();
    const auto& p_time = model.p_time().values();
    double total = 0.0;
    for (std::size_t s = 0; s < kSeasonCount; ++s) {
      for (std::size_t t = 0; t < kTimeBucketCount; ++t) {
        std::vector<TripLeg> legs;
        for (std::size_t l = 0; l < kSectionCount; ++l) {
          legs.push_back(TripLeg{static_cast<Section>(l), static_cast<TimeBucket>(t),
                                 static_cast<Season>(s)});
        }
        total += p_season[s] * p_time[t] * model.trip_risk(legs);
      }
    }
    return total;
  }

  // Joint form: weight each (season, time) context by its own probability
  // and add the conditional joint contributions of the three sections.
  const Factor& joint = doc.joint_table();
  Factor context = marginalize_to(joint, {str(kSeasonName), str(kTimeName)});
  double total = 0.0;
  for (std::size_t s = 0; s < kSeasonCount; ++s) {
    for (std::size_t t = 0; t < kTimeBucketCount; ++t) {
      Assignment st{{str(kSeasonName), str(season_label(static_cast<Season>(s)))},
                    {str(kTimeName), str(time_bucket_label(static_cast<TimeBucket>(t)))}};
      double weight = context.at(st);
      if (weight <= 0.0) continue;
      double inner = 0.0;
      for (std::size_t l = 0; l < kSectionCount; ++l) {
        Assignment cell = st;
        cell[str(kLocationName)] = str(section_label(static_cast<Section>(l)));
        cell[str(kBreakName)] = str(kBreakState);
        inner += joint.at(cell) / weight;
      }
      total += weight * inner;
    }
  }
  return total;
}

int run_report(const std::string& model_path, bool as_json) {
  ModelDocument doc = load_model(model_path);
  std::vector<Factor> factors = doc.factors();
  require_rail_domain(factors);

  struct GridRow {
    Season s;
    TimeBucket t;
    Section l;
    double risk;
  };
  std::vector<GridRow> grid;
  for (std::size_t s = 0; s < kSeasonCount; ++s) {
    for (std::size_t t = 0; t < kTimeBucketCount; ++t) {
      for (std::size_t l = 0; l < kSectionCount; ++l) {
        Assignment evidence{
            {str(kSeasonName), str(season_label(static_cast<Season>(s)))},
            {str(kTimeName), str(time_bucket_label(static_cast<TimeBucket>(t)))},
            {str(kLocationName), str(section_label(static_cast<Section>(l)))}};
        grid.push_back(GridRow{static_cast<Season>(s), static_cast<TimeBucket>(t),
                               static_cast<Section>(l), risk_of(factors, evidence)});
      }
    }
  }

  double overall = risk_of(factors, {});
  double ratio = evaluate_anchor(factors, "location_ratio");
  double trip_sum = trip_sum_identity(doc);
  AnchorReport anchors = check_anchors(factors);

  if (as_json) {
    json rows = json::array();
    for (const auto& row : grid) {
      rows.push_back({{"season", str(season_label(row.s))},
                      {"time_of_day", str(time_bucket_label(row.t))},
                      {"location", str(section_label(row.l))},
                      {"risk", row.risk}});
    }
    json anchor_rows = json::array();
    for (const auto& check : anchors.checks) {
      anchor_rows.push_back({{"name", check.spec.name},
                             {"actual", check.actual},
                             {"target", check.spec.target},
                             {"tolerance", check.spec.tolerance},
                             {"pass", check.pass}});
    }
    json out{{"tool_version", str(kToolVersion)},
             {"grid", rows},
             {"summary",
              {{"overall_risk", overall},
               {"location_ratio", ratio},
               {"trip_sum", trip_sum},
               {"trip_sum_residual", trip_sum - overall}}},
             {"anchors", anchor_rows},
             {"all_anchors_pass", anchors.all_pass},
             {"provenance", provenance_to_json(doc.provenance())}};
    std::cout << out.dump(2) << "\n";
    return 0;
  }

  std::cout << "conditional risk grid: p(" << kBreakName << "=" << kBreakState
            << " | season, time_of_day, location)\n";
  std::printf("  %-14s %-13s %-14s %s\n", "season", "time_of_day", "location", "risk");
  for (const auto& row : grid) {
    std::printf("  %-14s %-13s %-14s %s\n", str(season_label(row.s)).c_str(),
                str(time_bucket_label(row.t)).c_str(), str(section_label(row.l)).c_str(),
                fmt4(row.risk).c_str());
  }
  std::cout << "summary:\n";
  std::printf("  %-34s %s\n", "overall risk", fmt4(overall).c_str());
  std::printf("  %-34s %s\n", "inland/coastal ratio", fmt4(ratio).c_str());
  std::printf("  %-34s %s (residual %.3g)\n", "trip sum over all sections",
              fmt4(trip_sum).c_str(), trip_sum - overall);
  std::cout << "anchors:\n";
  for (const auto& check : anchors.checks) {
    std::printf("  %-4s %-30s actual %-10s target %s +/- %g\n",
                check.pass ? "PASS" : "FAIL", check.spec.name.c_str(),
                fmt4(check.actual).c_str(), fmt4(check.spec.target).c_str(),
                check.spec.tolerance);
  }
  return 0;
}

// --- validate ------------------------------------------------------------

int run_validate(const std::string& model_path) {
  ModelDocument doc = load_model(model_path);
  std::vector<Factor> factors = doc.factors();
  require_rail_domain(factors);

  struct Check {
    std::string name;
    double actual;
    double target;
    double tolerance;
    bool pass;
  };
  std::vector<Check> checks;

  AnchorReport anchors = check_anchors(factors);
  for (const auto& check : anchors.checks) {
    checks.push_back(Check{check.spec.name, check.actual, check.spec.target, check.spec.tolerance,
                           check.pass});
  }

  // Algebraic invariants, recomputed here even though construction enforces
  // most of them, so a validate run documents them explicitly.
  Factor joint = factors.front();
  for (std::size_t i = 1; i < factors.size(); ++i) joint = product(joint, factors[i]);
  double mass = joint.sum();
  checks.push_back(Check{"joint_mass", mass, 1.0, 1e-9, std::abs(mass - 1.0) <= 1e-9});

  double trip_sum = trip_sum_identity(doc);
  double overall = risk_of(factors, {});
  checks.push_back(Check{"trip_sum_identity", trip_sum, overall, 1e-9,
                         std::abs(trip_sum - overall) <= 1e-9});

  if (doc.is_net()) {
    Factor dist = normalize(joint);
    bool s_t = check_independence(dist, kSeasonName, kTimeName);
    bool s_l = check_independence(dist, kSeasonName, kLocationName);
    bool t_l = check_independence(dist, kTimeName, kLocationName);
    bool all = s_t && s_l && t_l;
    checks.push_back(Check{"context_independence", all ? 1.0 : 0.0, 1.0, 0.0, all});
  }

  bool all_pass = true;
  for (const auto& check : checks) {
    std::printf("%-4s %-30s actual %-12s target %s +/- %g (residual %.3g)\n",
                check.pass ? "PASS" : "FAIL", check.name.c_str(), fmt4(check.actual).c_str(),
                fmt4(check.target).c_str(), check.tolerance, check.actual - check.target);
    all_pass = all_pass && check.pass;
  }
  std::cout << (all_pass ? "all checks passed" : "some checks failed") << "\n";
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rail-break risk modeling pipeline"};
  app.require_subcommand(1);

  // synth
  auto* synth = app.add_subcommand("synth", "generate a synthetic exposure CSV");
  std::size_t synth_n = 0;
  std::uint64_t synth_seed = 20140401;
  std::string synth_out;
  std::optional<std::string> synth_model;
  bool synth_force = false;
  synth->add_option("--n", synth_n, "number of exposures to draw")->required();
  synth->add_option("--seed", synth_seed, "random seed (default 20140401)");
  synth->add_option("--out", synth_out, "output CSV path")->required();
  synth->add_option("--model", synth_model,
                    "model file to sample from (default: built-in reference model)");
  synth->add_flag("--force", synth_force, "overwrite an existing output file");

  // fit
  auto* fit = app.add_subcommand("fit", "fit a model from an exposure CSV");
  std::string fit_in, fit_config, fit_out;
  std::string fit_mode = "factorized";
  std::optional<double> fit_alpha;
  fit->add_option("--in", fit_in, "input exposure CSV")->required();
  fit->add_option("--config", fit_config, "config JSON (schedule, bucket maps, alpha)")
      ->required();
  fit->add_option("--mode", fit_mode, "factorized or full_joint (default factorized)")
      ->check(CLI::IsMember({"factorized", "full_joint"}));
  fit->add_option("--alpha", fit_alpha, "smoothing override (default: config alpha, else 1)");
  fit->add_option("--out", fit_out, "output model JSON path")->required();

  // query
  auto* query = app.add_subcommand("query", "conditional break-risk query");
  std::string query_model;
  std::optional<std::string> query_season, query_time, query_location;
  bool query_json = false;
  query->add_option("--model", query_model, "model JSON file")->required();
  query->add_option("--season", query_season,
                    "season evidence (early_summer, late_summer, winter, late_winter)");
  query->add_option("--time", query_time, "time evidence (morning, not_morning)");
  query->add_option("--location", query_location,
                    "location evidence (section name or position label like loop_7)");
  query->add_flag("--json", query_json, "emit JSON instead of text");

  // report
  auto* report = app.add_subcommand("report", "full scenario grid and anchor table");
  std::string report_model;
  bool report_json = false;
  report->add_option("--model", report_model, "model JSON file")->required();
  report->add_flag("--json", report_json, "emit JSON instead of text");

  // validate
  auto* validate = app.add_subcommand("validate", "check a model against the anchors");
  std::string validate_model;
  validate->add_option("--model", validate_model, "model JSON file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (synth->parsed()) {
      return run_synth(synth_n, synth_seed, synth_out, synth_model, synth_force);
    }
    if (fit->parsed()) {
      return run_fit(fit_in, fit_config, fit_mode, fit_alpha, fit_out);
    }
    if (query->parsed()) {
      return run_query(query_model, query_season, query_time, query_location, query_json);
    }
    if (report->parsed()) {
      return run_report(report_model, report_json);
    }
    if (validate->parsed()) {
      return run_validate(validate_model);
    }
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const SchemaError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const EvidenceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ConstructionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
