#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace railrisk {

// A named discrete variable with an ordered list of state labels. The state
// order is part of the variable's identity: two variables are interchangeable
// only if both the name and the full state list match.
class Variable {
 public:
  Variable(std::string name, std::vector<std::string> states);

  const std::string& name() const { return name_; }
  const std::vector<std::string>& states() const { return states_; }
  std::size_t cardinality() const { return states_.size(); }

  // Position of a state label, throws EvidenceError if the label is unknown.
  std::size_t index_of(std::string_view state) const;

  bool operator==(const Variable& other) const {
    return name_ == other.name_ && states_ == other.states_;
  }
  bool operator!=(const Variable& other) const { return !(*this == other); }

 private:
  std::string name_;
  std::vector<std::string> states_;
};

}  // namespace railrisk
