#include "qbi/oracle.hpp"

#include <algorithm>

namespace qbi {

namespace {

double chain_rule_product(const BayesNet& net, std::uint64_t joint) {
  double p = 1.0;
  for (int v = 0; v < net.size(); ++v) {
    const auto& cpt = net.cpts[v];
    const double p1 = cpt.rows[cpt.row_for(joint)];
    p *= ((joint >> v) & 1U) ? p1 : 1.0 - p1;
  }
  return p;
}

}  // namespace

Distribution enumerate_joint(const BayesNet& net) {
  require_valid(net);
  const int n = net.size();
  Eigen::VectorXd probs(Eigen::Index{1} << n);
  for (Eigen::Index a = 0; a < probs.size(); ++a) {
    probs(a) = chain_rule_product(net, static_cast<std::uint64_t>(a));
  }
  std::vector<int> scope(n);
  for (int i = 0; i < n; ++i) scope[i] = i;
  return Distribution(std::move(scope), std::move(probs));
}

Distribution oracle_query(const BayesNet& net, const std::vector<int>& targets,
                          const Evidence& evidence) {
  require_valid(net);
  evidence.check();
  if (targets.empty()) throw UsageError("query needs at least one target");
  for (std::size_t i = 0; i < targets.size(); ++i) {
    if (targets[i] < 0 || targets[i] >= net.size()) {
      throw UsageError("target variable #" + std::to_string(targets[i]) + " is undeclared");
    }
    if (std::find(targets.begin() + i + 1, targets.end(), targets[i]) != targets.end()) {
      throw UsageError("target variable #" + std::to_string(targets[i]) + " repeated");
    }
  }
  for (const auto& b : evidence.bindings) {
    if (b.variable < 0 || b.variable >= net.size()) {
      throw UsageError("evidence variable #" + std::to_string(b.variable) + " is undeclared");
    }
    if (std::find(targets.begin(), targets.end(), b.variable) != targets.end()) {
      throw UsageError("variable #" + std::to_string(b.variable) + " is both a target and evidence");
    }
  }

  const auto joint = enumerate_joint(net);
  Eigen::VectorXd numer = Eigen::VectorXd::Zero(Eigen::Index{1} << targets.size());
  double denom = 0.0;
  for (Eigen::Index a = 0; a < joint.size(); ++a) {
    const auto bits = static_cast<std::uint64_t>(a);
    const bool consistent = std::all_of(evidence.bindings.begin(), evidence.bindings.end(),
                                        [&](const Binding& b) {
                                          return static_cast<int>((bits >> b.variable) & 1U) == b.bit;
                                        });
    if (!consistent) continue;
    std::uint64_t t = 0;
    for (std::size_t k = 0; k < targets.size(); ++k) t |= ((bits >> targets[k]) & 1U) << k;
    numer(static_cast<Eigen::Index>(t)) += joint[a];
    denom += joint[a];
  }
  if (!(denom > kImpossibleMass)) throw ImpossibleEvidenceError("evidence has zero probability");
  return Distribution(targets, numer / denom);
}

}  // namespace qbi
