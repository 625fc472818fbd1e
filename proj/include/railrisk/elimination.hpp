#pragma once

#include <string>
#include <vector>

#include "railrisk/factor.hpp"

namespace railrisk {

// Order in which the hidden variables (those in neither query nor evidence)
// would be summed out. Greedy min-degree: at each step pick the variable
// that currently co-occurs with the fewest distinct other variables, ties
// broken by lexicographically smallest name; eliminating a variable merges
// the scopes that contain it. Exposed so tests can pin determinism.
std::vector<std::string> elimination_order(const std::vector<Factor>& factors,
                                           const std::vector<std::string>& query,
                                           const Assignment& evidence);

// Normalized posterior over the query variables given the evidence: every
// factor is sliced at the evidence, all hidden variables are summed out,
// and the result is normalized and reordered to the query order. The value
// is independent of the elimination order and equals brute-force
// enumeration of the full joint. Throws ImpossibleEvidenceError when the
// evidence has zero probability mass and EvidenceError / ScopeError on
// unknown variables or states.
Factor eliminate(const std::vector<Factor>& factors, const std::vector<std::string>& query,
                 const Assignment& evidence);

}  // namespace railrisk
