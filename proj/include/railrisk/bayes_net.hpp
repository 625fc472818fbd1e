#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "railrisk/dag.hpp"
#include "railrisk/factor.hpp"

namespace railrisk {

// A discrete Bayesian network: a Dag plus one conditional probability table
// per vertex. Each CPT is a Factor whose scope covers exactly the vertex
// and its parents and whose rows (one per parent assignment) each sum to
// one. CPTs are stored in a canonical scope order — parents in edge order,
// then the vertex itself — whatever order the caller supplied.
class BayesNet {
 public:
  // Throws StructureError when the CPT set does not line up with the
  // vertices, when a CPT's scope is not {vertex} ∪ parents, or when two
  // CPTs disagree about a variable's state list; throws CptError when a
  // row does not sum to one within kDistributionTol.
  BayesNet(Dag dag, std::map<std::string, Factor> cpts);

  const Dag& dag() const { return dag_; }
  const std::map<std::string, Factor>& cpts() const { return cpts_; }
  const Factor& cpt(std::string_view vertex) const;

  // The shared Variable object for a vertex. Throws ScopeError if unknown.
  const Variable& variable(std::string_view name) const;

  // All CPTs as plain factors, in topological vertex order. This is the
  // list handed to eliminate() for queries against the network.
  std::vector<Factor> factors() const;

  // Product of all CPTs: the full joint distribution, with scope in
  // topological vertex order.
  Factor joint() const;

 private:
  Dag dag_;
  std::map<std::string, Factor> cpts_;
  std::map<std::string, Variable> variables_;
};

}  // namespace railrisk
