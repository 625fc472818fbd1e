#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "railrisk/variable.hpp"

namespace railrisk {

// Tolerance for checks at the level of whole distributions (sums to one,
// independence of conditionals).
inline constexpr double kDistributionTol = 1e-9;
// Tolerance for pointwise algebraic identities between factor tables.
inline constexpr double kAlgebraTol = 1e-12;

// Maps variable names to state labels. Used for evidence, lookups, and
// query results. std::map keeps iteration deterministic.
using Assignment = std::map<std::string, std::string>;

// A nonnegative real table over the cross product of its scope variables.
// Values are stored row major with the LAST scope variable varying fastest,
// so for scope (X, Y) with |Y| = 3 the entry for (x=1, y=2) sits at index
// 1*3 + 2 = 5. Factors are immutable once built; every operation returns a
// new factor, which makes them safe to share across threads.
class Factor {
 public:
  // Validates that the scope has distinct variable names and that the value
  // table has exactly prod(cardinalities) finite, nonnegative entries.
  Factor(std::vector<Variable> scope, std::vector<double> values);

  // Scalar factor with empty scope, e.g. an evidence marginal p(E).
  static Factor constant(double value);

  const std::vector<Variable>& scope() const { return scope_; }
  const std::vector<double>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }

  bool empty_scope() const { return scope_.empty(); }
  // Value of an empty-scope factor; throws ScopeError on a non-scalar.
  double scalar() const;

  double sum() const;

  bool has_variable(std::string_view name) const;
  // Position of a variable in the scope; throws ScopeError if absent.
  std::size_t position(std::string_view name) const;
  const Variable& variable(std::string_view name) const;

  // Flat index for a per-scope-position state index vector.
  std::size_t index_of(const std::vector<std::size_t>& state_indices) const;

  // Lookup by named assignment. The assignment must cover every scope
  // variable; entries for other variables are ignored, which lets callers
  // evaluate several factors against one global assignment.
  double at(const Assignment& assignment) const;

  bool is_distribution(double tol = kDistributionTol) const;

 private:
  std::vector<Variable> scope_;
  std::vector<double> values_;
  std::vector<std::size_t> strides_;
};

// Pointwise product over the union of both scopes. Shared variables must
// agree on their state lists; the result keeps f's variable order with g's
// extra variables appended.
Factor product(const Factor& f, const Factor& g);

// Sums out one variable. The result drops it from the scope.
Factor marginalize(const Factor& f, std::string_view name);

// Sums out everything except `keep` (which may list variables in any order;
// the surviving scope keeps f's own order).
Factor marginalize_to(const Factor& f, const std::vector<std::string>& keep);

// Slices the table at the given evidence states and drops those variables
// from the scope. The result is intentionally left unnormalized. Evidence
// over the full scope yields a scalar factor; empty evidence is a copy.
// Entries for variables outside the scope are ignored, matching at(), so a
// single global evidence map can be applied to a whole list of factors.
Factor reduce(const Factor& f, const Assignment& evidence);

// Scales the table to total mass one. Throws DegenerateError on zero mass.
Factor normalize(const Factor& f);

// Returns a factor with the same entries under a permuted scope order.
Factor reordered(const Factor& f, const std::vector<std::string>& order);

// Posterior p(H|E) = p(E|H) p(H) / p(E), with the evidence already fixed
// inside `likelihood`. `likelihood` and `prior` must share one scope (the
// hypothesis variables) and `marginal` must be a positive scalar factor.
// With inputs that actually come from one joint distribution the result
// equals normalize(product(likelihood, prior)).
Factor bayes_posterior(const Factor& likelihood, const Factor& prior, const Factor& marginal);

// True when x and y are independent in the given joint distribution:
// p(x, y) = p(x) p(y) entrywise within tol.
bool check_independence(const Factor& joint, std::string_view x, std::string_view y,
                        double tol = kDistributionTol);

// Conditional version: p(x, y | z) = p(x | z) p(y | z) for every state of z
// whose marginal probability is positive.
bool check_independence(const Factor& joint, std::string_view x, std::string_view y,
                        std::string_view given, double tol = kDistributionTol);

// True when both factors cover the same variable set and agree entrywise
// within tol, regardless of scope order.
bool entrywise_equal(const Factor& a, const Factor& b, double tol = kAlgebraTol);

}  // namespace railrisk
