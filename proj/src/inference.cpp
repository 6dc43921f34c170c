#include "qbi/inference.hpp"

#include <set>

namespace qbi {

namespace {

void check_distinct(const std::vector<int>& vars, const char* what) {
  std::set<int> seen;
  for (int v : vars) {
    if (!seen.insert(v).second) {
      throw UsageError(std::string("variable #") + std::to_string(v) + " repeated in " + what);
    }
  }
}

std::vector<int> positions_in(const Distribution& dist, const std::vector<int>& vars,
                              const char* what) {
  std::vector<int> pos;
  pos.reserve(vars.size());
  for (int v : vars) {
    const int p = dist.position_of(v);
    if (p < 0) {
      throw UsageError(std::string(what) + " variable #" + std::to_string(v) +
                       " is not in the distribution's scope");
    }
    pos.push_back(p);
  }
  return pos;
}

std::uint64_t gather(std::uint64_t index, const std::vector<int>& positions) {
  std::uint64_t out = 0;
  for (std::size_t k = 0; k < positions.size(); ++k) {
    out |= ((index >> positions[k]) & 1U) << k;
  }
  return out;
}

}  // namespace

void Assignment::check() const {
  std::set<int> seen;
  for (const auto& b : bindings) {
    if (b.bit != 0 && b.bit != 1) {
      throw UsageError("bit for variable #" + std::to_string(b.variable) + " must be 0 or 1");
    }
    if (!seen.insert(b.variable).second) {
      throw UsageError("variable #" + std::to_string(b.variable) + " bound twice");
    }
  }
}

Distribution::Distribution(std::vector<int> scope, Eigen::VectorXd probabilities)
    : scope_(std::move(scope)), probs_(std::move(probabilities)) {
  check_distinct(scope_, "scope");
  if (scope_.size() > static_cast<std::size_t>(kMaxQubits)) {
    throw CapacityError("distribution scope exceeds " + std::to_string(kMaxQubits) + " variables");
  }
  if (probs_.size() != (Eigen::Index{1} << scope_.size())) {
    throw UsageError("distribution over " + std::to_string(scope_.size()) + " variables needs " +
                     std::to_string(Eigen::Index{1} << scope_.size()) + " entries, got " +
                     std::to_string(probs_.size()));
  }
}

int Distribution::position_of(int variable) const {
  for (std::size_t k = 0; k < scope_.size(); ++k) {
    if (scope_[k] == variable) return static_cast<int>(k);
  }
  return -1;
}

std::string Distribution::label(std::uint64_t index) const {
  std::string out(scope_.size(), '0');
  for (std::size_t k = 0; k < scope_.size(); ++k) {
    if ((index >> k) & 1U) out[k] = '1';
  }
  return out;
}

std::uint64_t Distribution::display_key(std::uint64_t index) const {
  std::uint64_t key = 0;
  for (std::size_t k = 0; k < scope_.size(); ++k) key = (key << 1) | ((index >> k) & 1U);
  return key;
}

Distribution marginal(const Distribution& dist, const std::vector<int>& vars) {
  check_distinct(vars, "marginal");
  const auto pos = positions_in(dist, vars, "marginal");
  Eigen::VectorXd out = Eigen::VectorXd::Zero(Eigen::Index{1} << vars.size());
  for (Eigen::Index i = 0; i < dist.size(); ++i) {
    out(static_cast<Eigen::Index>(gather(static_cast<std::uint64_t>(i), pos))) += dist[i];
  }
  return Distribution(vars, std::move(out));
}

Distribution conditional(const Distribution& dist, const std::vector<int>& targets,
                         const Evidence& evidence) {
  if (targets.empty()) throw UsageError("conditional needs at least one target");
  check_distinct(targets, "targets");
  evidence.check();
  const auto target_pos = positions_in(dist, targets, "target");

  std::uint64_t evidence_mask = 0;
  std::uint64_t evidence_bits = 0;
  for (const auto& b : evidence.bindings) {
    const int p = dist.position_of(b.variable);
    if (p < 0) {
      throw UsageError("evidence variable #" + std::to_string(b.variable) +
                       " is not in the distribution's scope");
    }
    for (int t : targets) {
      if (t == b.variable) {
        throw UsageError("variable #" + std::to_string(t) + " is both a target and evidence");
      }
    }
    evidence_mask |= std::uint64_t{1} << p;
    evidence_bits |= static_cast<std::uint64_t>(b.bit) << p;
  }

  Eigen::VectorXd out = Eigen::VectorXd::Zero(Eigen::Index{1} << targets.size());
  double mass = 0.0;
  for (Eigen::Index i = 0; i < dist.size(); ++i) {
    const auto idx = static_cast<std::uint64_t>(i);
    if ((idx & evidence_mask) != evidence_bits) continue;
    out(static_cast<Eigen::Index>(gather(idx, target_pos))) += dist[i];
    mass += dist[i];
  }
  if (!(mass > kImpossibleMass)) throw ImpossibleEvidenceError("evidence has zero probability");
  out /= mass;
  return Distribution(targets, std::move(out));
}

Distribution posterior(const Distribution& dist, int query, const Evidence& evidence) {
  return conditional(dist, {query}, evidence);
}

}  // namespace qbi
