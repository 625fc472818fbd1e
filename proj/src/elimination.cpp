#include "railrisk/elimination.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <utility>

#include "railrisk/error.hpp"

namespace railrisk {

namespace {

void validate_inputs(const std::vector<Factor>& factors, const std::vector<std::string>& query,
                     const Assignment& evidence) {
  if (factors.empty()) {
    throw ScopeError("elimination needs at least one factor");
  }
  if (query.empty()) {
    throw ScopeError("query must name at least one variable");
  }
  auto appears = [&](const std::string& name) {
    for (const auto& f : factors) {
      if (f.has_variable(name)) return true;
    }
    return false;
  };
  for (std::size_t i = 0; i < query.size(); ++i) {
    for (std::size_t j = i + 1; j < query.size(); ++j) {
      if (query[i] == query[j]) {
        throw ScopeError("query repeats variable '" + query[i] + "'");
      }
    }
    if (!appears(query[i])) {
      throw ScopeError("query variable '" + query[i] + "' does not appear in any factor");
    }
    if (evidence.count(query[i]) != 0) {
      throw EvidenceError("variable '" + query[i] + "' cannot be both query and evidence");
    }
  }
  for (const auto& [name, state] : evidence) {
    (void)state;
    if (!appears(name)) {
      throw EvidenceError("evidence variable '" + name + "' does not appear in any factor");
    }
  }
}

std::string describe_evidence(const Assignment& evidence) {
  if (evidence.empty()) return "(no evidence)";
  std::ostringstream out;
  out << "{";
  bool first = true;
  for (const auto& [name, state] : evidence) {
    if (!first) out << ", ";
    out << name << "=" << state;
    first = false;
  }
  out << "}";
  return out.str();
}

}  // namespace

std::vector<std::string> elimination_order(const std::vector<Factor>& factors,
                                           const std::vector<std::string>& query,
                                           const Assignment& evidence) {
  validate_inputs(factors, query, evidence);

  // Simulate the elimination on scopes only. Evidence variables vanish up
  // front (reduce drops them) and query variables are never eliminated.
  std::vector<std::set<std::string>> scopes;
  std::set<std::string> hidden;
  for (const auto& f : factors) {
    std::set<std::string> scope;
    for (const auto& v : f.scope()) {
      if (evidence.count(v.name()) == 0) scope.insert(v.name());
    }
    for (const auto& name : scope) {
      if (std::find(query.begin(), query.end(), name) == query.end()) hidden.insert(name);
    }
    if (!scope.empty()) scopes.push_back(std::move(scope));
  }

  std::vector<std::string> order;
  order.reserve(hidden.size());
  while (!hidden.empty()) {
    // Degree of a variable = distinct other variables sharing a scope with
    // it right now. std::set iteration is sorted, so keeping the first
    // minimum gives the lexicographic tie-break for free.
    std::string best;
    std::size_t best_degree = 0;
    bool have_best = false;
    for (const auto& name : hidden) {
      std::set<std::string> neighbors;
      for (const auto& scope : scopes) {
        if (scope.count(name) == 0) continue;
        neighbors.insert(scope.begin(), scope.end());
      }
      neighbors.erase(name);
      if (!have_best || neighbors.size() < best_degree) {
        best = name;
        best_degree = neighbors.size();
        have_best = true;
      }
    }

    std::set<std::string> merged;
    std::vector<std::set<std::string>> rest;
    for (auto& scope : scopes) {
      if (scope.count(best) != 0) {
        merged.insert(scope.begin(), scope.end());
      } else {
        rest.push_back(std::move(scope));
      }
    }
    merged.erase(best);
    if (!merged.empty()) rest.push_back(std::move(merged));
    scopes = std::move(rest);

    order.push_back(best);
    hidden.erase(best);
  }
  return order;
}

Factor eliminate(const std::vector<Factor>& factors, const std::vector<std::string>& query,
                 const Assignment& evidence) {
  std::vector<std::string> order = elimination_order(factors, query, evidence);

  std::vector<Factor> work;
  work.reserve(factors.size());
  for (const auto& f : factors) {
    work.push_back(reduce(f, evidence));
  }

  for (const auto& name : order) {
    std::vector<Factor> touching;
    std::vector<Factor> rest;
    for (auto& f : work) {
      if (f.has_variable(name)) {
        touching.push_back(std::move(f));
      } else {
        rest.push_back(std::move(f));
      }
    }
    Factor combined = std::move(touching.front());
    for (std::size_t i = 1; i < touching.size(); ++i) {
      combined = product(combined, touching[i]);
    }
    rest.push_back(marginalize(combined, name));
    work = std::move(rest);
  }

  Factor result = std::move(work.front());
  for (std::size_t i = 1; i < work.size(); ++i) {
    result = product(result, work[i]);
  }
  if (result.sum() <= 0.0) {
    throw ImpossibleEvidenceError("posterior has zero probability mass under evidence " +
                                  describe_evidence(evidence));
  }
  return reordered(normalize(result), query);
}

}  // namespace railrisk
