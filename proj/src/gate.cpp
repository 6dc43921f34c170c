#include "qbi/gate.hpp"

#include <cstdio>
#include <set>

#include "qbi/errors.hpp"

namespace qbi {

namespace {

void check_index(int qubit, int n_qubits) {
  if (qubit < 0 || qubit >= n_qubits) {
    throw IndexError("qubit " + std::to_string(qubit) + " out of range for " +
                     std::to_string(n_qubits) + " qubits");
  }
}

std::string format_theta(double theta) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", theta);
  return buf;
}

}  // namespace

void validate_gate(const Gate& gate, int n_qubits) {
  if (const auto* ry = std::get_if<RyGate>(&gate)) {
    check_index(ry->target, n_qubits);
    return;
  }
  const auto& cry = std::get<ControlledRyGate>(gate);
  check_index(cry.target, n_qubits);
  std::set<int> seen;
  for (const auto& c : cry.controls) {
    check_index(c.qubit, n_qubits);
    if (c.qubit == cry.target) {
      throw GateError("control q" + std::to_string(c.qubit) + " coincides with the target");
    }
    if (!seen.insert(c.qubit).second) {
      throw GateError("duplicate control q" + std::to_string(c.qubit));
    }
  }
}

std::string to_string(const Gate& gate) {
  if (const auto* ry = std::get_if<RyGate>(&gate)) {
    return "RY q" + std::to_string(ry->target) + " " + format_theta(ry->theta);
  }
  const auto& cry = std::get<ControlledRyGate>(gate);
  std::string out = "CRY";
  for (const auto& c : cry.controls) {
    out += c.polarity == Polarity::positive ? " +q" : " -q";
    out += std::to_string(c.qubit);
  }
  out += " q" + std::to_string(cry.target) + " " + format_theta(cry.theta);
  return out;
}

}  // namespace qbi
