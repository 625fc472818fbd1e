#include "railrisk/bayes_net.hpp"

#include <cmath>
#include <sstream>
#include <utility>

#include "railrisk/error.hpp"

namespace railrisk {

namespace {

// Renders the parent assignment of one CPT row for error messages, e.g.
// "(season=winter, time_of_day=morning)".
std::string describe_row(const std::vector<Variable>& parents, std::size_t row) {
  if (parents.empty()) return "(no parents)";
  std::vector<std::size_t> digits(parents.size(), 0);
  for (std::size_t i = parents.size(); i-- > 0;) {
    digits[i] = row % parents[i].cardinality();
    row /= parents[i].cardinality();
  }
  std::ostringstream out;
  out << "(";
  for (std::size_t i = 0; i < parents.size(); ++i) {
    if (i > 0) out << ", ";
    out << parents[i].name() << "=" << parents[i].states()[digits[i]];
  }
  out << ")";
  return out.str();
}

}  // namespace

BayesNet::BayesNet(Dag dag, std::map<std::string, Factor> cpts) : dag_(std::move(dag)) {
  for (const auto& v : dag_.vertices()) {
    if (cpts.find(v) == cpts.end()) {
      throw StructureError("vertex '" + v + "' has no CPT");
    }
  }
  for (const auto& [name, f] : cpts) {
    (void)f;
    if (!dag_.has_vertex(name)) {
      throw StructureError("CPT given for unknown vertex '" + name + "'");
    }
  }

  for (const auto& v : dag_.vertices()) {
    const Factor& given = cpts.at(v);
    std::vector<std::string> expected = dag_.parents(v);
    expected.push_back(v);
    if (given.scope().size() != expected.size()) {
      throw StructureError("CPT for vertex '" + v + "' must cover exactly the vertex and its " +
                           std::to_string(expected.size() - 1) + " parent(s)");
    }
    for (const auto& name : expected) {
      if (!given.has_variable(name)) {
        throw StructureError("CPT for vertex '" + v + "' is missing variable '" + name + "'");
      }
    }
    // Canonical scope order: parents in edge order, then the vertex, which
    // puts each row of the table in one contiguous block.
    Factor canonical = reordered(given, expected);

    for (const auto& var : canonical.scope()) {
      auto it = variables_.find(var.name());
      if (it == variables_.end()) {
        variables_.emplace(var.name(), var);
      } else if (it->second != var) {
        throw StructureError("variable '" + var.name() +
                             "' has conflicting state lists across CPTs");
      }
    }

    std::vector<Variable> parent_vars(canonical.scope().begin(), canonical.scope().end() - 1);
    std::size_t row_len = canonical.scope().back().cardinality();
    std::size_t rows = canonical.size() / row_len;
    for (std::size_t r = 0; r < rows; ++r) {
      double total = 0.0;
      for (std::size_t k = 0; k < row_len; ++k) total += canonical.values()[r * row_len + k];
      if (std::abs(total - 1.0) > kDistributionTol) {
        std::ostringstream msg;
        msg << "CPT row for vertex '" << v << "' at " << describe_row(parent_vars, r)
            << " sums to " << total << ", expected 1";
        throw CptError(msg.str());
      }
    }

    cpts_.emplace(v, std::move(canonical));
  }
}

const Factor& BayesNet::cpt(std::string_view vertex) const {
  auto it = cpts_.find(std::string(vertex));
  if (it == cpts_.end()) {
    throw ScopeError("network has no vertex '" + std::string(vertex) + "'");
  }
  return it->second;
}

const Variable& BayesNet::variable(std::string_view name) const {
  auto it = variables_.find(std::string(name));
  if (it == variables_.end()) {
    throw ScopeError("network has no variable '" + std::string(name) + "'");
  }
  return it->second;
}

std::vector<Factor> BayesNet::factors() const {
  std::vector<Factor> result;
  result.reserve(cpts_.size());
  for (const auto& v : dag_.topological_order()) {
    result.push_back(cpts_.at(v));
  }
  return result;
}

Factor BayesNet::joint() const {
  std::vector<Factor> fs = factors();
  Factor result = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) {
    result = product(result, fs[i]);
  }
  return reordered(result, dag_.topological_order());
}

}  // namespace railrisk
