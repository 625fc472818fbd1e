// Shared test utilities: small variable/factor builders, a random
// Bayes-net generator, and a brute-force joint-enumeration oracle.
//
// The oracle deliberately uses only Factor::at() plus its own integer
// arithmetic, so it shares no code path with product/marginalize/reduce/
// eliminate — the functions it is used to check.
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "railrisk/factor.hpp"
#include "railrisk/variable.hpp"

namespace railrisk::testing {

inline Variable make_var(const std::string& name, std::size_t cardinality) {
  std::vector<std::string> states;
  for (std::size_t i = 0; i < cardinality; ++i) {
    states.push_back(name + "_s" + std::to_string(i));
  }
  return Variable(name, states);
}

// Full-joint enumeration over the union scope of a factor list. Built once;
// answers many posterior queries cheaply against the cached joint table.
class JointOracle {
 public:
  explicit JointOracle(const std::vector<Factor>& factors) {
    for (const auto& f : factors) {
      for (const auto& v : f.scope()) {
        if (index_.find(v.name()) == index_.end()) {
          index_[v.name()] = vars_.size();
          vars_.push_back(v);
        }
      }
    }
    cards_.resize(vars_.size());
    for (std::size_t i = 0; i < vars_.size(); ++i) cards_[i] = vars_[i].cardinality();
    strides_.assign(vars_.size(), 1);
    for (std::size_t i = vars_.size(); i-- > 1;) {
      strides_[i - 1] = strides_[i] * cards_[i];
    }
    std::size_t total = vars_.empty() ? 1 : strides_[0] * cards_[0];

    cells_.assign(total, 1.0);
    std::vector<std::size_t> digits(vars_.size(), 0);
    for (std::size_t cell = 0; cell < total; ++cell) {
      Assignment assignment;
      for (std::size_t i = 0; i < vars_.size(); ++i) {
        digits[i] = (cell / strides_[i]) % cards_[i];
        assignment[vars_[i].name()] = vars_[i].states()[digits[i]];
      }
      double value = 1.0;
      for (const auto& f : factors) value *= f.at(assignment);
      cells_[cell] = value;
    }
  }

  // Normalized posterior over `query` (row-major in the given variable
  // order, last variable fastest) given the evidence.
  std::vector<double> posterior(const std::vector<std::string>& query,
                                const Assignment& evidence) const {
    std::vector<std::size_t> query_idx;
    for (const auto& name : query) query_idx.push_back(index_.at(name));
    std::vector<std::size_t> out_strides(query.size(), 1);
    for (std::size_t i = query.size(); i-- > 1;) {
      out_strides[i - 1] = out_strides[i] * cards_[query_idx[i]];
    }
    std::size_t out_size = query.empty() ? 1 : out_strides[0] * cards_[query_idx[0]];

    // Evidence as (variable index, required digit) pairs.
    std::vector<std::pair<std::size_t, std::size_t>> fixed;
    for (const auto& [name, state] : evidence) {
      std::size_t vi = index_.at(name);
      fixed.emplace_back(vi, vars_[vi].index_of(state));
    }

    std::vector<double> out(out_size, 0.0);
    for (std::size_t cell = 0; cell < cells_.size(); ++cell) {
      bool keep = true;
      for (const auto& [vi, digit] : fixed) {
        if ((cell / strides_[vi]) % cards_[vi] != digit) {
          keep = false;
          break;
        }
      }
      if (!keep) continue;
      std::size_t out_cell = 0;
      for (std::size_t i = 0; i < query_idx.size(); ++i) {
        out_cell += out_strides[i] * ((cell / strides_[query_idx[i]]) % cards_[query_idx[i]]);
      }
      out[out_cell] += cells_[cell];
    }

    double mass = 0.0;
    for (double v : out) mass += v;
    for (double& v : out) v /= mass;
    return out;
  }

  const std::vector<Variable>& variables() const { return vars_; }

 private:
  std::map<std::string, std::size_t> index_;
  std::vector<Variable> vars_;
  std::vector<std::size_t> cards_;
  std::vector<std::size_t> strides_;
  std::vector<double> cells_;
};

// A randomly structured Bayes net in generation order v0..v{n-1}: edges only
// go from lower to higher index, so the graph is acyclic by construction.
struct RandomNet {
  std::vector<Variable> vars;
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // (parent, child)
  std::vector<Factor> cpts;                                // one per variable
};

inline RandomNet random_net(std::mt19937& rng, std::size_t max_vars = 6,
                            std::size_t max_card = 4) {
  std::uniform_int_distribution<std::size_t> n_dist(2, max_vars);
  std::uniform_int_distribution<std::size_t> card_dist(2, max_card);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> weight(0.05, 1.0);

  RandomNet net;
  std::size_t n = n_dist(rng);
  for (std::size_t i = 0; i < n; ++i) {
    net.vars.push_back(make_var("v" + std::to_string(i), card_dist(rng)));
  }

  std::vector<std::vector<std::size_t>> parents(n);
  for (std::size_t child = 0; child < n; ++child) {
    for (std::size_t parent = 0; parent < child; ++parent) {
      if (parents[child].size() >= 3) break;  // bound the CPT size
      if (unit(rng) < 0.4) {
        parents[child].push_back(parent);
        net.edges.emplace_back(parent, child);
      }
    }
  }

  for (std::size_t child = 0; child < n; ++child) {
    std::vector<Variable> scope;
    for (std::size_t p : parents[child]) scope.push_back(net.vars[p]);
    scope.push_back(net.vars[child]);
    std::size_t cells = 1;
    for (const auto& v : scope) cells *= v.cardinality();
    std::size_t row = net.vars[child].cardinality();
    std::vector<double> values(cells);
    for (std::size_t start = 0; start < cells; start += row) {
      double mass = 0.0;
      for (std::size_t i = 0; i < row; ++i) {
        values[start + i] = weight(rng);
        mass += values[start + i];
      }
      for (std::size_t i = 0; i < row; ++i) values[start + i] /= mass;
    }
    net.cpts.emplace_back(scope, values);
  }
  return net;
}

// A uniformly random evidence assignment over `count` distinct non-query
// variables (fewer if not enough variables exist).
inline Assignment random_evidence(std::mt19937& rng, const std::vector<Variable>& vars,
                                  std::size_t query_index, std::size_t count) {
  std::vector<std::size_t> pool;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (i != query_index) pool.push_back(i);
  }
  std::shuffle(pool.begin(), pool.end(), rng);
  Assignment evidence;
  for (std::size_t i = 0; i < count && i < pool.size(); ++i) {
    const Variable& v = vars[pool[i]];
    std::uniform_int_distribution<std::size_t> state(0, v.cardinality() - 1);
    evidence[v.name()] = v.states()[state(rng)];
  }
  return evidence;
}

}  // namespace railrisk::testing
