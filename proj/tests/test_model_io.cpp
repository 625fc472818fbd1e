// Tests for model serialization: lossless JSON round-trips for both model
// kinds, provenance preservation, and strict schema rejection.

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "railrisk/error.hpp"
#include "railrisk/model_io.hpp"
#include "railrisk/rail_model.hpp"
#include "railrisk/reference.hpp"

using namespace railrisk;
using nlohmann::json;

namespace {

ModelProvenance full_provenance() {
  ModelProvenance p;
  p.source = "exposures.csv";
  p.fit_mode = "factorized";
  p.alpha = 1.5;
  ScheduleConfig schedule;
  schedule.trains_per_day = 12.25;
  schedule.period_start = Date{2014, 4, 1};
  schedule.period_end = Date{2015, 4, 1};
  p.schedule = schedule;
  p.bucket_maps = BucketMaps::defaults();
  return p;
}

CountTable small_counts() {
  CountTable counts;
  for (std::size_t s = 0; s < kSeasonCount; ++s) {
    for (std::size_t t = 0; t < kTimeBucketCount; ++t) {
      for (std::size_t l = 0; l < kSectionCount; ++l) {
        counts.at(static_cast<Season>(s), static_cast<TimeBucket>(t), static_cast<Section>(l),
                  false) = 97;
        counts.at(static_cast<Season>(s), static_cast<TimeBucket>(t), static_cast<Section>(l),
                  true) = static_cast<std::int64_t>(s + t + l);
      }
    }
  }
  return counts;
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("railrisk_test_" + name);
}

}  // namespace

TEST_CASE("network models round-trip through JSON without loss") {
  ModelDocument doc = ModelDocument::from_net(calibrate_reference().net(), full_provenance());
  json j = model_to_json(doc);
  ModelDocument back = model_from_json(j);

  CHECK(back.kind() == "bayes_net");
  REQUIRE(back.is_net());
  for (const auto& vertex : doc.net().dag().vertices()) {
    const auto& original = doc.net().cpt(vertex).values();
    const auto& restored = back.net().cpt(vertex).values();
    REQUIRE(original.size() == restored.size());
    for (std::size_t i = 0; i < original.size(); ++i) {
      CHECK(original[i] == restored[i]);  // exact doubles, not approximate
    }
  }
  CHECK(back.net().dag().edges() == doc.net().dag().edges());

  const ModelProvenance& p = back.provenance();
  CHECK(p.source == "exposures.csv");
  CHECK(p.fit_mode == "factorized");
  CHECK(p.alpha == 1.5);
  REQUIRE(p.schedule.has_value());
  CHECK(p.schedule->trains_per_day == 12.25);
  CHECK(p.schedule->period_start == Date{2014, 4, 1});
  REQUIRE(p.bucket_maps.has_value());
  CHECK(p.bucket_maps->month_to_season == BucketMaps::defaults().month_to_season);
  CHECK(p.bucket_maps->hour_to_bucket == BucketMaps::defaults().hour_to_bucket);

  // Serializing the restored document reproduces the same JSON.
  CHECK(model_to_json(back) == j);
}

TEST_CASE("joint models round-trip and provenance blanks are preserved") {
  ModelProvenance p;
  p.source = "calibration";
  p.fit_mode = "full_joint";
  p.alpha = 0.0;
  ModelDocument doc = ModelDocument::from_joint(fit_full_joint(small_counts(), 1.0), p);
  CHECK(doc.kind() == "joint");
  CHECK(!doc.is_net());
  CHECK_THROWS_AS(doc.net(), StructureError);

  json j = model_to_json(doc);
  ModelDocument back = model_from_json(j);
  CHECK(back.kind() == "joint");
  const auto& original = doc.joint_table().values();
  const auto& restored = back.joint_table().values();
  REQUIRE(original.size() == restored.size());
  for (std::size_t i = 0; i < original.size(); ++i) {
    CHECK(original[i] == restored[i]);
  }
  CHECK(!back.provenance().schedule.has_value());
  CHECK(!back.provenance().bucket_maps.has_value());

  ModelDocument net_doc =
      ModelDocument::from_net(calibrate_reference().net(), full_provenance());
  CHECK_THROWS_AS(net_doc.joint_table(), StructureError);
}

TEST_CASE("factors() exposes what queries need for either kind") {
  ModelDocument net_doc =
      ModelDocument::from_net(calibrate_reference().net(), full_provenance());
  CHECK(net_doc.factors().size() == 4);

  ModelProvenance p;
  p.source = "x";
  p.fit_mode = "full_joint";
  p.alpha = 1.0;
  ModelDocument joint_doc = ModelDocument::from_joint(fit_full_joint(small_counts(), 1.0), p);
  REQUIRE(joint_doc.factors().size() == 1);
  CHECK(joint_doc.factors().front().is_distribution());
}

TEST_CASE("from_joint rejects factors that are not distributions") {
  ModelProvenance p;
  p.source = "x";
  p.fit_mode = "full_joint";
  p.alpha = 0.0;
  Factor not_normalized({season_variable()}, {0.3, 0.3, 0.3, 0.3});
  CHECK_THROWS_AS(ModelDocument::from_joint(not_normalized, p), StructureError);
  CHECK_THROWS_AS(ModelDocument::from_joint(Factor::constant(1.0), p), StructureError);
}

TEST_CASE("model files save and load byte-identically") {
  std::filesystem::path path = temp_path("roundtrip.json");
  ModelDocument doc = ModelDocument::from_net(calibrate_reference().net(), full_provenance());
  save_model(doc, path.string());
  ModelDocument loaded = load_model(path.string());
  CHECK(model_to_json(loaded) == model_to_json(doc));

  // Saving the loaded model writes the identical file.
  std::filesystem::path second = temp_path("roundtrip2.json");
  save_model(loaded, second.string());
  std::ifstream a(path), b(second);
  std::string text_a((std::istreambuf_iterator<char>(a)), std::istreambuf_iterator<char>());
  std::string text_b((std::istreambuf_iterator<char>(b)), std::istreambuf_iterator<char>());
  CHECK(text_a == text_b);
  CHECK(!text_a.empty());
  CHECK(text_a.back() == '\n');

  std::filesystem::remove(path);
  std::filesystem::remove(second);
}

TEST_CASE("loading rejects missing files and invalid JSON") {
  CHECK_THROWS_AS(load_model("/nonexistent/path/model.json"), IoError);

  std::filesystem::path path = temp_path("invalid.json");
  std::ofstream(path) << "{ not json";
  CHECK_THROWS_AS(load_model(path.string()), SchemaError);
  std::filesystem::remove(path);
}

TEST_CASE("schema violations are rejected field by field") {
  ModelDocument doc = ModelDocument::from_net(calibrate_reference().net(), full_provenance());
  const json good = model_to_json(doc);
  CHECK_NOTHROW(model_from_json(good));

  json j = good;
  j.erase("schema_version");
  CHECK_THROWS_AS(model_from_json(j), SchemaError);

  j = good;
  j["schema_version"] = 999;
  CHECK_THROWS_AS(model_from_json(j), SchemaError);

  j = good;
  j["schema_version"] = "1";
  CHECK_THROWS_AS(model_from_json(j), SchemaError);

  j = good;
  j.erase("tool_version");
  CHECK_THROWS_AS(model_from_json(j), SchemaError);

  j = good;
  j["kind"] = "spreadsheet";
  CHECK_THROWS_AS(model_from_json(j), SchemaError);

  j = good;
  j.erase("variables");
  CHECK_THROWS_AS(model_from_json(j), SchemaError);

  j = good;
  j["variables"][0].erase("states");
  CHECK_THROWS_AS(model_from_json(j), SchemaError);

  j = good;
  j["edges"].push_back({"season", "ghost_vertex"});
  CHECK_THROWS_AS(model_from_json(j), SchemaError);

  j = good;
  j["tables"]["rail_break"].erase(0);  // wrong table length
  CHECK_THROWS_AS(model_from_json(j), SchemaError);

  j = good;
  j["tables"]["rail_break"][0] = "0.5";  // strings are not numbers
  CHECK_THROWS_AS(model_from_json(j), SchemaError);

  // A raw perturbation breaks row normalization: the file is corrupt.
  j = good;
  j["tables"]["rail_break"][1] = j["tables"]["rail_break"][1].get<double>() + 0.05;
  CHECK_THROWS_AS(model_from_json(j), SchemaError);

  j = good;
  j.erase("provenance");
  CHECK_THROWS_AS(model_from_json(j), SchemaError);

  j = good;
  j["provenance"].erase("alpha");
  CHECK_THROWS_AS(model_from_json(j), SchemaError);
}

TEST_CASE("bucket maps serialize by state label") {
  BucketMaps maps = BucketMaps::defaults();
  json j = bucket_maps_to_json(maps);
  REQUIRE(j["month_to_season"].size() == 12);
  REQUIRE(j["hour_to_bucket"].size() == 24);
  CHECK(j["month_to_season"][3] == "winter");  // April
  CHECK(j["hour_to_bucket"][4] == "morning");

  BucketMaps back = bucket_maps_from_json(j);
  CHECK(back.month_to_season == maps.month_to_season);
  CHECK(back.hour_to_bucket == maps.hour_to_bucket);

  json bad = j;
  bad["month_to_season"][0] = "monsoon";
  CHECK_THROWS_AS(bucket_maps_from_json(bad), SchemaError);
  bad = j;
  bad["hour_to_bucket"].erase(0);
  CHECK_THROWS_AS(bucket_maps_from_json(bad), SchemaError);
}
