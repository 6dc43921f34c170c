#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qbi {

/// A binary random variable. `index` is its declaration position and also
/// the qubit that carries it.
struct Variable {
  std::string name;
  int index = 0;

  friend bool operator==(const Variable&, const Variable&) = default;
};

/// P(var = 1 | parents) for every parent assignment.
///
/// Row r encodes the assignment whose bits, read left to right in `parents`
/// order, spell r in binary: with parents (X, Y), row 2 is X=1, Y=0. Roots
/// have no parents and a single row holding the prior.
struct Cpt {
  std::vector<int> parents;
  std::vector<double> rows;

  /// Bit taken by parent `j` in row `row`.
  int parent_bit(std::size_t row, std::size_t j) const {
    return static_cast<int>((row >> (parents.size() - 1 - j)) & 1U);
  }

  /// Row selected by a full joint assignment (bit k = variable k).
  std::size_t row_for(std::uint64_t joint) const {
    std::size_t row = 0;
    for (int p : parents) row = (row << 1) | ((joint >> p) & 1U);
    return row;
  }

  friend bool operator==(const Cpt&, const Cpt&) = default;
};

/// Discrete Bayesian network over binary variables. `cpts[i]` belongs to
/// `variables[i]`. Construct freely; check with validate().
struct BayesNet {
  std::vector<Variable> variables;
  std::vector<Cpt> cpts;

  int size() const noexcept { return static_cast<int>(variables.size()); }

  std::optional<int> find(std::string_view name) const;

  /// Index of `name`; throws UsageError if undeclared.
  int index_of(std::string_view name) const;

  const std::string& name_of(int index) const { return variables.at(index).name; }

  friend bool operator==(const BayesNet&, const BayesNet&) = default;
};

/// Every structural problem with `net`: duplicate or malformed names, dangling
/// parents, wrong row counts, probabilities outside [0, 1], cycles.
/// Empty means valid. Never throws.
std::vector<std::string> validate(const BayesNet& net);

/// Throws ValidationError carrying validate()'s output if it is non-empty.
void require_valid(const BayesNet& net);

/// Kahn's algorithm; among ready variables the lowest index goes first.
/// Throws ValidationError naming one cycle if the graph is not a DAG.
std::vector<int> topological_order(const BayesNet& net);

bool is_identifier(std::string_view name);

}  // namespace qbi
