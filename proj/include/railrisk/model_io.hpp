#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "railrisk/bayes_net.hpp"
#include "railrisk/buckets.hpp"
#include "railrisk/exposure.hpp"
#include "railrisk/factor.hpp"

namespace railrisk {

// Where a persisted model came from and under what assumptions it was
// fitted. Carried verbatim through save/load so downstream consumers can
// audit any result back to its data and bucketing.
struct ModelProvenance {
  std::string source;    // data file, "calibration", etc.
  std::string fit_mode;  // "factorized", "full_joint", or "calibrated"
  double alpha = 0.0;
  std::optional<ScheduleConfig> schedule;
  std::optional<BucketMaps> bucket_maps;
};

// A model as persisted on disk: either a Bayesian network (variables,
// edges, one table per vertex) or a single joint table, plus provenance.
// Documents are immutable; loading and saving round-trip every value
// exactly (doubles are serialized with shortest round-trip precision).
class ModelDocument {
 public:
  static ModelDocument from_net(BayesNet net, ModelProvenance provenance);
  static ModelDocument from_joint(Factor joint, ModelProvenance provenance);

  // "bayes_net" or "joint".
  std::string_view kind() const { return net_.has_value() ? "bayes_net" : "joint"; }
  bool is_net() const { return net_.has_value(); }

  // Accessors for the matching kind; throw StructureError on a mismatch.
  const BayesNet& net() const;
  const Factor& joint_table() const;

  // The factor list to run queries against: the network's CPTs, or the
  // joint table alone. Both behave identically under eliminate().
  std::vector<Factor> factors() const;

  const ModelProvenance& provenance() const { return provenance_; }

 private:
  ModelDocument() = default;

  std::optional<BayesNet> net_;
  std::optional<Factor> joint_;
  ModelProvenance provenance_;
};

// JSON layout (schema_version 1): top-level keys schema_version,
// tool_version, kind, variables (ordered, with ordered states), edges +
// tables for networks or table for joints, and provenance. Table values
// are row major with the last scope variable fastest; a network table's
// scope is the vertex's parents in edge order, then the vertex.
nlohmann::json model_to_json(const ModelDocument& doc);

// Shared JSON forms for provenance and bucket maps (months and hours as
// label arrays). The from_json direction throws SchemaError on malformed
// input.
nlohmann::json provenance_to_json(const ModelProvenance& p);
nlohmann::json bucket_maps_to_json(const BucketMaps& maps);
BucketMaps bucket_maps_from_json(const nlohmann::json& j);

// Throws SchemaError on wrong schema_version, missing or mistyped fields,
// or content that fails model validation.
ModelDocument model_from_json(const nlohmann::json& j);

// File variants; throw IoError on unreadable/unwritable paths and
// SchemaError when the file is not valid JSON.
void save_model(const ModelDocument& doc, const std::string& path);
ModelDocument load_model(const std::string& path);

}  // namespace railrisk
