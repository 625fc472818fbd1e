#include "railrisk/factor.hpp"

#include <cmath>
#include <sstream>
#include <utility>

#include "railrisk/error.hpp"

namespace railrisk {

namespace {

// Walks every cell of a scope as a mixed-radix counter, last digit fastest.
// Calls fn with the current per-position state indices.
template <typename Fn>
void for_each_cell(const std::vector<Variable>& scope, Fn&& fn) {
  std::vector<std::size_t> digits(scope.size(), 0);
  while (true) {
    fn(digits);
    std::size_t pos = scope.size();
    while (pos > 0) {
      --pos;
      if (++digits[pos] < scope[pos].cardinality()) break;
      digits[pos] = 0;
      if (pos == 0) return;
    }
    if (scope.empty()) return;
  }
}

std::vector<std::size_t> compute_strides(const std::vector<Variable>& scope) {
  std::vector<std::size_t> strides(scope.size(), 1);
  for (std::size_t i = scope.size(); i-- > 1;) {
    strides[i - 1] = strides[i] * scope[i].cardinality();
  }
  return strides;
}

}  // namespace

Factor::Factor(std::vector<Variable> scope, std::vector<double> values)
    : scope_(std::move(scope)), values_(std::move(values)), strides_(compute_strides(scope_)) {
  std::size_t expected = 1;
  for (std::size_t i = 0; i < scope_.size(); ++i) {
    for (std::size_t j = i + 1; j < scope_.size(); ++j) {
      if (scope_[i].name() == scope_[j].name()) {
        throw ConstructionError("factor scope repeats variable '" + scope_[i].name() + "'");
      }
    }
    expected *= scope_[i].cardinality();
  }
  if (values_.size() != expected) {
    std::ostringstream msg;
    msg << "factor needs " << expected << " values for its scope, got " << values_.size();
    throw ConstructionError(msg.str());
  }
  for (double v : values_) {
    if (!std::isfinite(v)) {
      throw ConstructionError("factor values must be finite");
    }
    if (v < 0.0) {
      throw ConstructionError("factor values must be nonnegative");
    }
  }
}

Factor Factor::constant(double value) { return Factor({}, {value}); }

double Factor::scalar() const {
  if (!empty_scope()) {
    throw ScopeError("expected a scalar factor, got one over " + std::to_string(scope_.size()) +
                     " variables");
  }
  return values_[0];
}

double Factor::sum() const {
  double total = 0.0;
  for (double v : values_) total += v;
  return total;
}

bool Factor::has_variable(std::string_view name) const {
  for (const auto& v : scope_) {
    if (v.name() == name) return true;
  }
  return false;
}

std::size_t Factor::position(std::string_view name) const {
  for (std::size_t i = 0; i < scope_.size(); ++i) {
    if (scope_[i].name() == name) return i;
  }
  throw ScopeError("variable '" + std::string(name) + "' is not in the factor scope");
}

const Variable& Factor::variable(std::string_view name) const { return scope_[position(name)]; }

std::size_t Factor::index_of(const std::vector<std::size_t>& state_indices) const {
  std::size_t index = 0;
  for (std::size_t i = 0; i < scope_.size(); ++i) {
    index += state_indices[i] * strides_[i];
  }
  return index;
}

double Factor::at(const Assignment& assignment) const {
  std::size_t index = 0;
  for (std::size_t i = 0; i < scope_.size(); ++i) {
    auto it = assignment.find(scope_[i].name());
    if (it == assignment.end()) {
      throw ScopeError("assignment is missing variable '" + scope_[i].name() + "'");
    }
    index += scope_[i].index_of(it->second) * strides_[i];
  }
  return values_[index];
}

bool Factor::is_distribution(double tol) const { return std::abs(sum() - 1.0) <= tol; }

Factor product(const Factor& f, const Factor& g) {
  std::vector<Variable> scope = f.scope();
  for (const auto& v : g.scope()) {
    if (f.has_variable(v.name())) {
      if (f.variable(v.name()) != v) {
        throw ScopeError("variable '" + v.name() + "' has conflicting state lists");
      }
    } else {
      scope.push_back(v);
    }
  }

  // Stride of each result variable inside f and g, zero when absent. The
  // mixed-radix walk below then reads both operands with plain index math.
  std::vector<std::size_t> f_stride(scope.size(), 0), g_stride(scope.size(), 0);
  for (std::size_t i = 0; i < scope.size(); ++i) {
    const std::string& name = scope[i].name();
    if (f.has_variable(name)) {
      std::size_t pos = f.position(name);
      std::size_t stride = 1;
      for (std::size_t k = f.scope().size(); k-- > pos + 1;) stride *= f.scope()[k].cardinality();
      f_stride[i] = stride;
    }
    if (g.has_variable(name)) {
      std::size_t pos = g.position(name);
      std::size_t stride = 1;
      for (std::size_t k = g.scope().size(); k-- > pos + 1;) stride *= g.scope()[k].cardinality();
      g_stride[i] = stride;
    }
  }

  std::size_t size = 1;
  for (const auto& v : scope) size *= v.cardinality();
  std::vector<double> values;
  values.reserve(size);
  for_each_cell(scope, [&](const std::vector<std::size_t>& digits) {
    std::size_t fi = 0, gi = 0;
    for (std::size_t i = 0; i < digits.size(); ++i) {
      fi += digits[i] * f_stride[i];
      gi += digits[i] * g_stride[i];
    }
    values.push_back(f.values()[fi] * g.values()[gi]);
  });
  return Factor(std::move(scope), std::move(values));
}

Factor marginalize(const Factor& f, std::string_view name) {
  std::size_t pos = f.position(name);
  std::size_t card = f.scope()[pos].cardinality();
  std::size_t stride = 1;
  for (std::size_t k = f.scope().size(); k-- > pos + 1;) stride *= f.scope()[k].cardinality();

  std::vector<Variable> scope;
  scope.reserve(f.scope().size() - 1);
  for (std::size_t i = 0; i < f.scope().size(); ++i) {
    if (i != pos) scope.push_back(f.scope()[i]);
  }
  std::vector<double> values(f.size() / card, 0.0);
  for (std::size_t i = 0; i < f.size(); ++i) {
    // Dropping position pos from the mixed-radix index collapses the digits
    // above it onto the digits below it.
    std::size_t out = (i / (stride * card)) * stride + (i % stride);
    values[out] += f.values()[i];
  }
  return Factor(std::move(scope), std::move(values));
}

Factor marginalize_to(const Factor& f, const std::vector<std::string>& keep) {
  for (const auto& name : keep) {
    f.position(name);  // validate up front so errors name the right variable
  }
  Factor result = f;
  for (const auto& v : f.scope()) {
    bool kept = false;
    for (const auto& name : keep) {
      if (v.name() == name) kept = true;
    }
    if (!kept) result = marginalize(result, v.name());
  }
  return result;
}

Factor reduce(const Factor& f, const Assignment& evidence) {
  if (evidence.empty()) return f;

  std::size_t offset = 0;
  std::vector<Variable> kept;
  std::vector<std::size_t> kept_strides;
  for (std::size_t i = 0; i < f.scope().size(); ++i) {
    const Variable& v = f.scope()[i];
    std::size_t stride = 1;
    for (std::size_t k = f.scope().size(); k-- > i + 1;) stride *= f.scope()[k].cardinality();
    auto it = evidence.find(v.name());
    if (it == evidence.end()) {
      kept.push_back(v);
      kept_strides.push_back(stride);
    } else {
      offset += v.index_of(it->second) * stride;
    }
  }

  std::size_t size = 1;
  for (const auto& v : kept) size *= v.cardinality();
  std::vector<double> values;
  values.reserve(size);
  for_each_cell(kept, [&](const std::vector<std::size_t>& digits) {
    std::size_t index = offset;
    for (std::size_t i = 0; i < digits.size(); ++i) index += digits[i] * kept_strides[i];
    values.push_back(f.values()[index]);
  });
  return Factor(std::move(kept), std::move(values));
}

Factor normalize(const Factor& f) {
  double total = f.sum();
  if (total <= 0.0) {
    throw DegenerateError("cannot normalize a factor with zero total mass");
  }
  std::vector<double> values = f.values();
  for (double& v : values) v /= total;
  return Factor(f.scope(), std::move(values));
}

Factor reordered(const Factor& f, const std::vector<std::string>& order) {
  if (order.size() != f.scope().size()) {
    throw ScopeError("reorder list must name every scope variable exactly once");
  }
  std::vector<Variable> scope;
  std::vector<std::size_t> old_stride;
  scope.reserve(order.size());
  for (const auto& name : order) {
    std::size_t pos = f.position(name);
    for (const auto& v : scope) {
      if (v.name() == name) throw ScopeError("reorder list repeats variable '" + name + "'");
    }
    scope.push_back(f.scope()[pos]);
    std::size_t stride = 1;
    for (std::size_t k = f.scope().size(); k-- > pos + 1;) stride *= f.scope()[k].cardinality();
    old_stride.push_back(stride);
  }
  std::vector<double> values;
  values.reserve(f.size());
  for_each_cell(scope, [&](const std::vector<std::size_t>& digits) {
    std::size_t index = 0;
    for (std::size_t i = 0; i < digits.size(); ++i) index += digits[i] * old_stride[i];
    values.push_back(f.values()[index]);
  });
  return Factor(std::move(scope), std::move(values));
}

Factor bayes_posterior(const Factor& likelihood, const Factor& prior, const Factor& marginal) {
  if (!marginal.empty_scope()) {
    throw ScopeError("evidence marginal must be a scalar factor");
  }
  double p_e = marginal.scalar();
  if (p_e <= 0.0) {
    throw DegenerateError("evidence marginal must be positive");
  }
  if (likelihood.scope().size() != prior.scope().size()) {
    throw ScopeError("likelihood and prior must cover the same hypothesis variables");
  }
  for (const auto& v : prior.scope()) {
    if (!likelihood.has_variable(v.name()) || likelihood.variable(v.name()) != v) {
      throw ScopeError("likelihood and prior must cover the same hypothesis variables");
    }
  }
  Factor joint = product(likelihood, prior);
  std::vector<double> values = joint.values();
  for (double& v : values) v /= p_e;
  return Factor(joint.scope(), std::move(values));
}

namespace {

// Shared body for both independence checks. `given` empty means unconditional.
bool independent_in(const Factor& joint, std::string_view x, std::string_view y,
                    std::string_view given, double tol) {
  if (x == y) {
    throw ScopeError("independence check needs two distinct variables");
  }
  std::vector<std::string> keep{std::string(x), std::string(y)};
  if (!given.empty()) keep.push_back(std::string(given));
  Factor dist = marginalize_to(joint, keep);

  const Variable& vx = dist.variable(x);
  const Variable& vy = dist.variable(y);
  if (given.empty()) {
    Factor px = marginalize(dist, y);
    Factor py = marginalize(dist, x);
    for (const auto& sx : vx.states()) {
      for (const auto& sy : vy.states()) {
        Assignment a{{std::string(x), sx}, {std::string(y), sy}};
        if (std::abs(dist.at(a) - px.at(a) * py.at(a)) > tol) return false;
      }
    }
    return true;
  }

  const Variable& vz = dist.variable(given);
  Factor pz = marginalize_to(dist, {std::string(given)});
  for (const auto& sz : vz.states()) {
    Assignment z{{std::string(given), sz}};
    double mass = pz.at(z);
    if (mass <= 0.0) continue;  // conditionals undefined on zero-mass slices
    Factor slice = reduce(dist, z);
    Factor px = marginalize(slice, y);
    Factor py = marginalize(slice, x);
    for (const auto& sx : vx.states()) {
      for (const auto& sy : vy.states()) {
        Assignment a{{std::string(x), sx}, {std::string(y), sy}};
        double pxy_z = slice.at(a) / mass;
        double prod = (px.at(a) / mass) * (py.at(a) / mass);
        if (std::abs(pxy_z - prod) > tol) return false;
      }
    }
  }
  return true;
}

}  // namespace

bool check_independence(const Factor& joint, std::string_view x, std::string_view y, double tol) {
  return independent_in(joint, x, y, {}, tol);
}

bool check_independence(const Factor& joint, std::string_view x, std::string_view y,
                        std::string_view given, double tol) {
  if (given.empty()) {
    throw ScopeError("conditioning variable name must be nonempty");
  }
  return independent_in(joint, x, y, given, tol);
}

bool entrywise_equal(const Factor& a, const Factor& b, double tol) {
  if (a.scope().size() != b.scope().size()) return false;
  for (const auto& v : a.scope()) {
    if (!b.has_variable(v.name()) || b.variable(v.name()) != v) return false;
  }
  bool equal = true;
  // Walk a's cells and look each assignment up in b by name.
  std::vector<const Variable*> vars;
  for (const auto& v : a.scope()) vars.push_back(&v);
  std::size_t n = a.size();
  for (std::size_t flat = 0; flat < n; ++flat) {
    Assignment assignment;
    std::size_t rest = flat;
    for (std::size_t i = a.scope().size(); i-- > 0;) {
      std::size_t card = vars[i]->cardinality();
      assignment[vars[i]->name()] = vars[i]->states()[rest % card];
      rest /= card;
    }
    if (std::abs(a.values()[flat] - b.at(assignment)) > tol) {
      equal = false;
      break;
    }
  }
  return equal;
}

}  // namespace railrisk
