#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "qbi/bayesnet.hpp"
#include "qbi/errors.hpp"
#include "qbi/statevector.hpp"

namespace qbi {

/// Probability mass at or below which evidence counts as impossible.
inline constexpr double kImpossibleMass = 1e-300;

struct Binding {
  int variable = 0;
  int bit = 0;

  friend bool operator==(const Binding&, const Binding&) = default;
};

/// Partial assignment of variables to bits.
struct Assignment {
  std::vector<Binding> bindings;

  bool empty() const noexcept { return bindings.empty(); }

  /// Throws UsageError on a repeated variable or a bit other than 0/1.
  void check() const;
};

/// Observed evidence; same shape as any other assignment.
using Evidence = Assignment;

/// Dense table over the joint outcomes of `scope`.
///
/// Entry i assigns scope[k] the value of bit k of i. Display order is the
/// reverse: outcome labels put scope[0] leftmost, so the joint over (X, Y, FA)
/// renders X=1, Y=1, FA=0 as "110".
class Distribution {
 public:
  Distribution(std::vector<int> scope, Eigen::VectorXd probabilities);

  const std::vector<int>& scope() const noexcept { return scope_; }
  const Eigen::VectorXd& probabilities() const noexcept { return probs_; }
  Eigen::Index size() const noexcept { return probs_.size(); }
  double operator[](Eigen::Index i) const { return probs_(i); }
  double total() const { return probs_.sum(); }

  /// Position of `variable` within the scope, or -1.
  int position_of(int variable) const;

  /// Display label of entry `index`, scope[0] leftmost.
  std::string label(std::uint64_t index) const;

  /// Integer value of label(index) read as binary; used for ordering.
  std::uint64_t display_key(std::uint64_t index) const;

 private:
  std::vector<int> scope_;
  Eigen::VectorXd probs_;
};

/// |c_i|^2 over every variable of `net`, scope (0, 1, ..., n-1).
template <typename Scalar>
Distribution joint_distribution(const BasicStatevector<Scalar>& sv, const BayesNet& net) {
  if (sv.n_qubits() != net.size()) {
    throw UsageError("statevector has " + std::to_string(sv.n_qubits()) +
                     " qubits but the network has " + std::to_string(net.size()) + " variables");
  }
  std::vector<int> scope(net.size());
  for (int i = 0; i < net.size(); ++i) scope[i] = i;
  return Distribution(std::move(scope), probabilities(sv).template cast<double>());
}

/// Sums out everything outside `vars`; the result's scope is `vars` in the given order.
Distribution marginal(const Distribution& dist, const std::vector<int>& vars);

/// P(targets | evidence) by filtering the entries consistent with the
/// evidence and renormalizing. Throws UsageError when targets are empty,
/// out of scope, or overlap the evidence, and ImpossibleEvidenceError when
/// the evidence carries no mass.
Distribution conditional(const Distribution& dist, const std::vector<int>& targets,
                         const Evidence& evidence);

/// Two-entry distribution of `query` given `evidence`.
Distribution posterior(const Distribution& dist, int query, const Evidence& evidence);

}  // namespace qbi
