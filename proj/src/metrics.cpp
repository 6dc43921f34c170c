#include "qbi/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qbi {

double entropy(const Distribution& dist) {
  double h = 0.0;
  for (Eigen::Index i = 0; i < dist.size(); ++i) {
    const double p = dist[i];
    if (p > 0.0) h -= p * std::log2(p);
  }
  return h;
}

double posterior_entropy(const Distribution& dist, int query, const Evidence& evidence) {
  return entropy(posterior(dist, query, evidence));
}

double mutual_information(const Distribution& dist, int a, int b) {
  if (a == b) throw UsageError("mutual information needs two distinct variables");
  const auto pair = marginal(dist, {a, b});  // entry = a_bit | b_bit << 1
  const double pa[2] = {pair[0] + pair[2], pair[1] + pair[3]};
  const double pb[2] = {pair[0] + pair[1], pair[2] + pair[3]};
  double mi = 0.0;
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) {
      const double pxy = pair[x | (y << 1)];
      if (pxy > 0.0) mi += pxy * std::log2(pxy / (pa[x] * pb[y]));
    }
  }
  return mi < 0.0 && mi > -1e-12 ? 0.0 : mi;
}

double fidelity(const Distribution& p, const Distribution& q) {
  if (p.scope() != q.scope()) throw UsageError("fidelity needs distributions over the same scope");
  const double overlap = (p.probabilities().array() * q.probabilities().array()).sqrt().sum();
  return overlap * overlap;
}

std::vector<RankedOutcome> cdf_over_sorted_outcomes(const Distribution& dist) {
  std::vector<RankedOutcome> out(static_cast<std::size_t>(dist.size()));
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i].index = i;
    out[i].probability = dist[static_cast<Eigen::Index>(i)];
  }
  std::sort(out.begin(), out.end(), [&](const RankedOutcome& l, const RankedOutcome& r) {
    if (l.probability != r.probability) return l.probability > r.probability;
    return dist.display_key(l.index) < dist.display_key(r.index);
  });
  double running = 0.0;
  for (auto& o : out) {
    running += o.probability;
    o.cumulative = running;
  }
  return out;
}

std::vector<RankedOutcome> top_k(const Distribution& dist, std::size_t k) {
  if (k < 1) throw UsageError("top_k needs k >= 1");
  auto all = cdf_over_sorted_outcomes(dist);
  if (all.size() > k) all.resize(k);
  return all;
}

}  // namespace qbi
