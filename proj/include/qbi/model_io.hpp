#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "qbi/bayesnet.hpp"

namespace qbi {

// Model files (.qbn) are YAML documents:
//
//   variables: [X, Y, FA]
//   cpt:
//     X:  {parents: [], rows: {"": 0.33}}
//     Y:  {parents: [], rows: {"": 0.85}}
//     FA:
//       parents: [X, Y]
//       rows: {"0,0": 0.80, "0,1": 0.97, "1,0": 0.40, "1,1": 0.95}
//
// Row keys list one bit per parent, comma-separated, in `parents` order.
// Every declared variable needs a cpt entry and every row must be present.

/// Parses and validates. Throws ParseError (with line) or ValidationError.
BayesNet parse_model(std::string_view text);

BayesNet load_model(const std::filesystem::path& path);

/// Inverse of parse_model; probabilities keep 17 significant digits.
std::string render_model(const BayesNet& net);

}  // namespace qbi
