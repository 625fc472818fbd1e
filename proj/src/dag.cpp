#include "railrisk/dag.hpp"

#include <map>
#include <set>
#include <utility>

#include "railrisk/error.hpp"

namespace railrisk {

Dag::Dag(std::vector<std::string> vertices, std::vector<Edge> edges)
    : vertices_(std::move(vertices)), edges_(std::move(edges)) {
  std::set<std::string> names;
  for (const auto& v : vertices_) {
    if (v.empty()) {
      throw StructureError("vertex names must be nonempty");
    }
    if (!names.insert(v).second) {
      throw StructureError("duplicate vertex '" + v + "'");
    }
  }

  std::set<Edge> seen;
  for (const auto& [parent, child] : edges_) {
    if (names.count(parent) == 0) {
      throw StructureError("edge references unknown vertex '" + parent + "'");
    }
    if (names.count(child) == 0) {
      throw StructureError("edge references unknown vertex '" + child + "'");
    }
    if (parent == child) {
      throw StructureError("self-loop on vertex '" + parent + "'");
    }
    if (!seen.insert({parent, child}).second) {
      throw StructureError("duplicate edge " + parent + " -> " + child);
    }
  }

  // Kahn's algorithm with a sorted ready set, so the order is deterministic
  // regardless of declaration order.
  std::map<std::string, std::size_t> in_degree;
  for (const auto& v : vertices_) in_degree[v] = 0;
  for (const auto& e : edges_) ++in_degree[e.second];

  std::set<std::string> ready;
  for (const auto& [v, d] : in_degree) {
    if (d == 0) ready.insert(v);
  }
  topo_.reserve(vertices_.size());
  while (!ready.empty()) {
    std::string v = *ready.begin();
    ready.erase(ready.begin());
    topo_.push_back(v);
    for (const auto& [parent, child] : edges_) {
      if (parent == v && --in_degree[child] == 0) ready.insert(child);
    }
  }
  if (topo_.size() != vertices_.size()) {
    throw CycleError("edge set contains a directed cycle");
  }
}

bool Dag::has_vertex(std::string_view name) const {
  for (const auto& v : vertices_) {
    if (v == name) return true;
  }
  return false;
}

std::vector<std::string> Dag::parents(std::string_view child) const {
  std::vector<std::string> result;
  for (const auto& [p, c] : edges_) {
    if (c == child) result.push_back(p);
  }
  return result;
}

std::vector<std::string> Dag::children(std::string_view parent) const {
  std::vector<std::string> result;
  for (const auto& [p, c] : edges_) {
    if (p == parent) result.push_back(c);
  }
  return result;
}

}  // namespace railrisk
