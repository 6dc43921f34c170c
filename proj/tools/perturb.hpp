#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qbi/bayesnet.hpp"

namespace qbi::cli {

struct PerturbTrial {
  std::vector<std::string> top3;  ///< outcome labels, most probable first
  double mass = 0.0;              ///< cumulative probability of top3
  bool agrees = false;            ///< same top-3 set as the baseline
};

struct PerturbReport {
  double noise = 0.0;
  int trials = 0;
  std::uint64_t seed = 0;
  PerturbTrial baseline;
  std::vector<PerturbTrial> runs;
  double agreement = 0.0;
  double min_mass = 0.0;
  double mean_mass = 0.0;
};

/// Re-runs the quantum pipeline `trials` times with every CPT entry moved by
/// a uniform draw from [-noise, +noise] and clamped to [0, 1]. Draws come
/// from mt19937_64(seed), visited in declaration order then row order.
PerturbReport run_perturbation(const BayesNet& net, double noise, int trials, std::uint64_t seed);

std::string format_report(const PerturbReport& report);

}  // namespace qbi::cli
