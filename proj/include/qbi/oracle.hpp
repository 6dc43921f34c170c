#pragma once

#include <vector>

#include "qbi/bayesnet.hpp"
#include "qbi/inference.hpp"

namespace qbi {

/// Exact joint by the chain-rule product over every full assignment.
/// Scope is (0, 1, ..., n-1), matching joint_distribution.
Distribution enumerate_joint(const BayesNet& net);

/// Bayes' rule on the enumerated joint. Same contract as conditional(), but
/// computed directly from the CPT products without the inference engine.
Distribution oracle_query(const BayesNet& net, const std::vector<int>& targets,
                          const Evidence& evidence);

}  // namespace qbi
