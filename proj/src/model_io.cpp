#include "railrisk/model_io.hpp"

#include <fstream>
#include <map>
#include <utility>

#include "railrisk/calendar.hpp"
#include "railrisk/error.hpp"
#include "railrisk/rail_domain.hpp"
#include "railrisk/version.hpp"

namespace railrisk {

using nlohmann::json;

ModelDocument ModelDocument::from_net(BayesNet net, ModelProvenance provenance) {
  ModelDocument doc;
  doc.net_.emplace(std::move(net));
  doc.provenance_ = std::move(provenance);
  return doc;
}

ModelDocument ModelDocument::from_joint(Factor joint, ModelProvenance provenance) {
  if (joint.empty_scope()) {
    throw StructureError("a joint model needs at least one variable");
  }
  if (!joint.is_distribution()) {
    throw StructureError("a joint model's table must sum to one");
  }
  ModelDocument doc;
  doc.joint_.emplace(std::move(joint));
  doc.provenance_ = std::move(provenance);
  return doc;
}

const BayesNet& ModelDocument::net() const {
  if (!net_.has_value()) {
    throw StructureError("model document holds a joint table, not a network");
  }
  return *net_;
}

const Factor& ModelDocument::joint_table() const {
  if (!joint_.has_value()) {
    throw StructureError("model document holds a network, not a joint table");
  }
  return *joint_;
}

std::vector<Factor> ModelDocument::factors() const {
  if (net_.has_value()) return net_->factors();
  return {*joint_};
}

namespace {

json variables_to_json(const std::vector<Variable>& variables) {
  json list = json::array();
  for (const auto& v : variables) {
    list.push_back({{"name", v.name()}, {"states", v.states()}});
  }
  return list;
}

// Typed field access that converts every JSON mishap into a SchemaError
// naming the offending field.
const json& require_field(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) {
    throw SchemaError(std::string("model file is missing field '") + key + "'");
  }
  return *it;
}

std::string require_string(const json& j, const char* key) {
  const json& field = require_field(j, key);
  if (!field.is_string()) {
    throw SchemaError(std::string("field '") + key + "' must be a string");
  }
  return field.get<std::string>();
}

double require_number(const json& j, const char* key) {
  const json& field = require_field(j, key);
  if (!field.is_number()) {
    throw SchemaError(std::string("field '") + key + "' must be a number");
  }
  return field.get<double>();
}

const json& require_array(const json& j, const char* key) {
  const json& field = require_field(j, key);
  if (!field.is_array()) {
    throw SchemaError(std::string("field '") + key + "' must be an array");
  }
  return field;
}

std::vector<double> number_list(const json& field, const char* key) {
  if (!field.is_array()) {
    throw SchemaError(std::string("field '") + key + "' must be an array of numbers");
  }
  std::vector<double> values;
  values.reserve(field.size());
  for (const auto& v : field) {
    if (!v.is_number()) {
      throw SchemaError(std::string("field '") + key + "' must contain only numbers");
    }
    values.push_back(v.get<double>());
  }
  return values;
}

std::vector<Variable> variables_from_json(const json& list) {
  std::vector<Variable> variables;
  for (const auto& entry : list) {
    if (!entry.is_object()) {
      throw SchemaError("each entry of 'variables' must be an object");
    }
    std::string name = require_string(entry, "name");
    const json& states_json = require_array(entry, "states");
    std::vector<std::string> states;
    for (const auto& s : states_json) {
      if (!s.is_string()) {
        throw SchemaError("variable states must be strings");
      }
      states.push_back(s.get<std::string>());
    }
    variables.emplace_back(std::move(name), std::move(states));
  }
  return variables;
}

}  // namespace

json bucket_maps_to_json(const BucketMaps& maps) {
  json months = json::array(), hours = json::array();
  for (auto s : maps.month_to_season) months.push_back(std::string(season_label(s)));
  for (auto t : maps.hour_to_bucket) hours.push_back(std::string(time_bucket_label(t)));
  return json{{"month_to_season", months}, {"hour_to_bucket", hours}};
}

BucketMaps bucket_maps_from_json(const json& j) {
  if (!j.is_object()) {
    throw SchemaError("bucket_maps must be an object");
  }
  BucketMaps maps{};
  const json& months = require_array(j, "month_to_season");
  const json& hours = require_array(j, "hour_to_bucket");
  if (months.size() != 12 || hours.size() != 24) {
    throw SchemaError("bucket_maps needs 12 month entries and 24 hour entries");
  }
  try {
    for (std::size_t i = 0; i < 12; ++i) {
      if (!months[i].is_string()) throw SchemaError("month_to_season entries must be strings");
      maps.month_to_season[i] = season_from_label(months[i].get<std::string>());
    }
    for (std::size_t i = 0; i < 24; ++i) {
      if (!hours[i].is_string()) throw SchemaError("hour_to_bucket entries must be strings");
      maps.hour_to_bucket[i] = time_bucket_from_label(hours[i].get<std::string>());
    }
    maps.validate();
  } catch (const SchemaError&) {
    throw;
  } catch (const Error& e) {
    throw SchemaError(std::string("invalid bucket_maps: ") + e.what());
  }
  return maps;
}

json provenance_to_json(const ModelProvenance& p) {
  json j{{"source", p.source}, {"fit_mode", p.fit_mode}, {"alpha", p.alpha}};
  if (p.schedule.has_value()) {
    j["schedule"] = {{"trains_per_day", p.schedule->trains_per_day},
                     {"period_start", format_date(p.schedule->period_start)},
                     {"period_end", format_date(p.schedule->period_end)}};
  } else {
    j["schedule"] = nullptr;
  }
  j["bucket_maps"] = p.bucket_maps.has_value() ? bucket_maps_to_json(*p.bucket_maps) : json();
  return j;
}

namespace {

ModelProvenance provenance_from_json(const json& j) {
  if (!j.is_object()) {
    throw SchemaError("provenance must be an object");
  }
  ModelProvenance p;
  p.source = require_string(j, "source");
  p.fit_mode = require_string(j, "fit_mode");
  p.alpha = require_number(j, "alpha");
  const json& schedule = require_field(j, "schedule");
  if (!schedule.is_null()) {
    ScheduleConfig config;
    config.trains_per_day = require_number(schedule, "trains_per_day");
    try {
      config.period_start = parse_date(require_string(schedule, "period_start"));
      config.period_end = parse_date(require_string(schedule, "period_end"));
      config.validate();
    } catch (const SchemaError&) {
      throw;
    } catch (const Error& e) {
      throw SchemaError(std::string("invalid schedule: ") + e.what());
    }
    p.schedule = config;
  }
  const json& maps_json = require_field(j, "bucket_maps");
  if (!maps_json.is_null()) {
    p.bucket_maps = bucket_maps_from_json(maps_json);
  }
  return p;
}

}  // namespace

json model_to_json(const ModelDocument& doc) {
  json j;
  j["schema_version"] = kModelSchemaVersion;
  j["tool_version"] = std::string(kToolVersion);
  j["kind"] = std::string(doc.kind());
  if (doc.is_net()) {
    const BayesNet& net = doc.net();
    std::vector<Variable> variables;
    for (const auto& name : net.dag().vertices()) {
      variables.push_back(net.variable(name));
    }
    j["variables"] = variables_to_json(variables);
    json edges = json::array();
    for (const auto& [parent, child] : net.dag().edges()) {
      edges.push_back({parent, child});
    }
    j["edges"] = edges;
    json tables = json::object();
    for (const auto& name : net.dag().vertices()) {
      tables[name] = net.cpt(name).values();
    }
    j["tables"] = tables;
  } else {
    const Factor& joint = doc.joint_table();
    j["variables"] = variables_to_json(joint.scope());
    j["table"] = joint.values();
  }
  j["provenance"] = provenance_to_json(doc.provenance());
  return j;
}

ModelDocument model_from_json(const json& j) {
  if (!j.is_object()) {
    throw SchemaError("model file must be a JSON object");
  }
  const json& version = require_field(j, "schema_version");
  if (!version.is_number_integer() || version.get<int>() != kModelSchemaVersion) {
    throw SchemaError("unsupported schema_version (this tool reads version " +
                      std::to_string(kModelSchemaVersion) + ")");
  }
  require_string(j, "tool_version");
  std::string kind = require_string(j, "kind");
  ModelProvenance provenance = provenance_from_json(require_field(j, "provenance"));

  try {
    std::vector<Variable> variables = variables_from_json(require_array(j, "variables"));
    if (kind == "bayes_net") {
      std::vector<std::string> vertex_names;
      for (const auto& v : variables) vertex_names.push_back(v.name());

      std::vector<Dag::Edge> edges;
      for (const auto& e : require_array(j, "edges")) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string()) {
          throw SchemaError("each edge must be a [parent, child] pair of strings");
        }
        edges.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
      }
      Dag dag(vertex_names, edges);

      std::map<std::string, Variable> by_name;
      for (const auto& v : variables) by_name.emplace(v.name(), v);
      const json& tables = require_field(j, "tables");
      if (!tables.is_object()) {
        throw SchemaError("field 'tables' must be an object keyed by vertex name");
      }
      std::map<std::string, Factor> cpts;
      for (const auto& name : vertex_names) {
        auto it = tables.find(name);
        if (it == tables.end()) {
          throw SchemaError("field 'tables' is missing vertex '" + name + "'");
        }
        std::vector<Variable> scope;
        for (const auto& parent : dag.parents(name)) scope.push_back(by_name.at(parent));
        scope.push_back(by_name.at(name));
        cpts.emplace(name, Factor(std::move(scope), number_list(*it, "tables")));
      }
      return ModelDocument::from_net(BayesNet(std::move(dag), std::move(cpts)),
                                     std::move(provenance));
    }
    if (kind == "joint") {
      Factor joint(variables, number_list(require_field(j, "table"), "table"));
      return ModelDocument::from_joint(std::move(joint), std::move(provenance));
    }
    throw SchemaError("unknown model kind '" + kind + "' (expected bayes_net or joint)");
  } catch (const SchemaError&) {
    throw;
  } catch (const Error& e) {
    // Structural validation failures (bad scopes, unnormalized rows,
    // cycles) all mean the file does not describe a valid model.
    throw SchemaError(std::string("invalid model content: ") + e.what());
  }
}

void save_model(const ModelDocument& doc, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw IoError("cannot open '" + path + "' for writing");
  }
  out << model_to_json(doc).dump(2) << "\n";
  if (!out) {
    throw IoError("failed while writing '" + path + "'");
  }
}

ModelDocument load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open '" + path + "' for reading");
  }
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("model file is not valid JSON: ") + e.what());
  }
  return model_from_json(j);
}

}  // namespace railrisk
