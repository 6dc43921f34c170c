#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qbi/inference.hpp"

namespace qbi {

struct MetricReport {
  std::string name;
  double value = 0.0;
};

/// Shannon entropy in bits; zero-probability outcomes contribute nothing.
double entropy(const Distribution& dist);

double posterior_entropy(const Distribution& dist, int query, const Evidence& evidence);

/// I(a; b) in bits from the pairwise marginal of `dist`. Rounding noise
/// down to -1e-12 is reported as 0.
double mutual_information(const Distribution& dist, int a, int b);

/// (sum_i sqrt(p_i q_i))^2. Both distributions must share a scope.
double fidelity(const Distribution& p, const Distribution& q);

struct RankedOutcome {
  std::uint64_t index = 0;  ///< entry index in the source distribution
  double probability = 0.0;
  double cumulative = 0.0;
};

/// All outcomes by descending probability, ties broken by ascending display
/// key, with running totals.
std::vector<RankedOutcome> cdf_over_sorted_outcomes(const Distribution& dist);

/// First min(k, size) entries of cdf_over_sorted_outcomes. Throws UsageError for k < 1.
std::vector<RankedOutcome> top_k(const Distribution& dist, std::size_t k);

}  // namespace qbi
