#include "qbi/circuit.hpp"

#include <algorithm>
#include <cmath>

#include "qbi/errors.hpp"

namespace qbi {

double angle_for_probability(double p) {
  constexpr double jitter = 1e-15;
  if (!(p >= -jitter && p <= 1.0 + jitter)) {
    throw DomainError("probability " + std::to_string(p) + " outside [0, 1]");
  }
  return 2.0 * std::asin(std::sqrt(std::clamp(p, 0.0, 1.0)));
}

Circuit compile(const BayesNet& net) {
  require_valid(net);
  Circuit circuit{net.size(), {}};
  for (int v : topological_order(net)) {
    const auto& cpt = net.cpts[v];
    if (cpt.parents.empty()) {
      circuit.gates.emplace_back(RyGate{v, angle_for_probability(cpt.rows[0])});
      continue;
    }
    for (std::size_t row = 0; row < cpt.rows.size(); ++row) {
      ControlledRyGate gate{{}, v, angle_for_probability(cpt.rows[row])};
      for (std::size_t j = 0; j < cpt.parents.size(); ++j) {
        gate.controls.push_back(
            {cpt.parents[j], cpt.parent_bit(row, j) ? Polarity::positive : Polarity::negative});
      }
      circuit.gates.emplace_back(std::move(gate));
    }
  }
  return circuit;
}

std::string dump_circuit(const Circuit& circuit) {
  std::string out;
  for (const auto& gate : circuit.gates) out += to_string(gate) + "\n";
  return out;
}

}  // namespace qbi
