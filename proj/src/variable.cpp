#include "railrisk/variable.hpp"

#include <algorithm>
#include <utility>

#include "railrisk/error.hpp"

namespace railrisk {

Variable::Variable(std::string name, std::vector<std::string> states)
    : name_(std::move(name)), states_(std::move(states)) {
  if (name_.empty()) {
    throw ConstructionError("variable name must be nonempty");
  }
  if (states_.size() < 2) {
    throw ConstructionError("variable '" + name_ + "' needs at least 2 states");
  }
  for (std::size_t i = 0; i < states_.size(); ++i) {
    if (states_[i].empty()) {
      throw ConstructionError("variable '" + name_ + "' has an empty state label");
    }
    for (std::size_t j = i + 1; j < states_.size(); ++j) {
      if (states_[i] == states_[j]) {
        throw ConstructionError("variable '" + name_ + "' repeats state '" + states_[i] + "'");
      }
    }
  }
}

std::size_t Variable::index_of(std::string_view state) const {
  for (std::size_t i = 0; i < states_.size(); ++i) {
    if (states_[i] == state) return i;
  }
  throw EvidenceError("variable '" + name_ + "' has no state '" + std::string(state) + "'");
}

}  // namespace railrisk
