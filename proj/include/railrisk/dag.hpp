#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace railrisk {

// A directed acyclic graph over named vertices. Edges are ordered
// (parent, child) pairs; at most one edge per ordered pair and no
// self-loops. Acyclicity is established at construction, so every Dag in
// flight is valid by definition.
class Dag {
 public:
  using Edge = std::pair<std::string, std::string>;

  // Throws StructureError on duplicate vertices, unknown edge endpoints,
  // self-loops, or repeated edges, and CycleError on a directed cycle.
  Dag(std::vector<std::string> vertices, std::vector<Edge> edges);

  const std::vector<std::string>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }

  bool has_vertex(std::string_view name) const;

  // Parents of a vertex in the order their edges were declared.
  std::vector<std::string> parents(std::string_view child) const;
  std::vector<std::string> children(std::string_view parent) const;

  // Deterministic topological order: Kahn's algorithm, choosing the
  // lexicographically smallest ready vertex at each step.
  const std::vector<std::string>& topological_order() const { return topo_; }

 private:
  std::vector<std::string> vertices_;
  std::vector<Edge> edges_;
  std::vector<std::string> topo_;
};

}  // namespace railrisk
