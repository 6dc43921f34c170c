#pragma once

#include <string>
#include <variant>
#include <vector>

namespace qbi {

enum class Polarity { positive, negative };

/// A control qubit. Positive controls fire on bit 1, negative on bit 0.
struct Control {
  int qubit = 0;
  Polarity polarity = Polarity::positive;

  friend bool operator==(const Control&, const Control&) = default;
};

struct RyGate {
  int target = 0;
  double theta = 0.0;

  friend bool operator==(const RyGate&, const RyGate&) = default;
};

struct ControlledRyGate {
  std::vector<Control> controls;
  int target = 0;
  double theta = 0.0;

  friend bool operator==(const ControlledRyGate&, const ControlledRyGate&) = default;
};

using Gate = std::variant<RyGate, ControlledRyGate>;

/// Throws IndexError for out-of-range indices and GateError when the target
/// appears among the controls or a control qubit repeats.
void validate_gate(const Gate& gate, int n_qubits);

/// One-line text form: `RY q<t> <theta>` or `CRY +q<i> -q<j> ... q<t> <theta>`,
/// theta with 17 significant digits.
std::string to_string(const Gate& gate);

}  // namespace qbi
