#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <type_traits>
#include <vector>

#include "qbi/bayesnet.hpp"
#include "qbi/gate.hpp"
#include "qbi/statevector.hpp"

namespace qbi {

struct Circuit {
  int n_qubits = 0;
  std::vector<Gate> gates;

  friend bool operator==(const Circuit&, const Circuit&) = default;
};

/// 2 asin(sqrt(p)), so that RY of this angle on |0> yields P(1) = p.
/// Inputs within 1e-15 of [0, 1] are clamped; anything else is a DomainError.
double angle_for_probability(double p);

/// Gates in topological order of the variables. A root becomes one RY; a
/// variable with k parents becomes 2^k controlled RYs, one per CPT row in
/// ascending row order, each controlled on the parents with the row's bit
/// pattern. Qubit i carries variable i.
Circuit compile(const BayesNet& net);

/// One gate per line, see to_string(const Gate&).
std::string dump_circuit(const Circuit& circuit);

/// Largest tolerated |<psi|psi> - 1| after simulation.
template <typename Scalar>
inline Scalar normalization_tolerance() {
  if constexpr (std::numeric_limits<Scalar>::epsilon() <= std::numeric_limits<double>::epsilon()) {
    return Scalar(1e-12);
  } else {
    return std::sqrt(std::numeric_limits<Scalar>::epsilon());
  }
}

/// Applies the gates left to right to |0...0>. Throws InvariantError if the
/// result drifts from unit norm.
template <typename Scalar = double>
BasicStatevector<Scalar> simulate(const Circuit& circuit) {
  auto sv = new_zero_state<Scalar>(circuit.n_qubits);
  for (const auto& gate : circuit.gates) apply_inplace(sv, gate);
  const Scalar drift = std::abs(sv.norm_squared() - Scalar(1));
  if (!(drift < normalization_tolerance<Scalar>())) {
    throw InvariantError("statevector norm drifted by " + std::to_string(static_cast<double>(drift)));
  }
  return sv;
}

}  // namespace qbi
