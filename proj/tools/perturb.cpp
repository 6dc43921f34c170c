#include "perturb.hpp"

#include <algorithm>
#include <cstdio>
#include <random>

#include "qbi/circuit.hpp"
#include "qbi/errors.hpp"
#include "qbi/inference.hpp"
#include "qbi/metrics.hpp"

namespace qbi::cli {

namespace {

PerturbTrial top3_of(const BayesNet& net) {
  const auto joint = joint_distribution(simulate(compile(net)), net);
  PerturbTrial trial;
  for (const auto& o : top_k(joint, 3)) {
    trial.top3.push_back(joint.label(o.index));
    trial.mass = o.cumulative;
  }
  return trial;
}

std::vector<std::string> sorted(std::vector<std::string> v) {
  std::sort(v.begin(), v.end());
  return v;
}

// Maps the generator's raw output onto [-1, 1) without the
// implementation-defined std::uniform_real_distribution.
double symmetric_unit(std::mt19937_64& gen) {
  const double unit = static_cast<double>(gen() >> 11) * 0x1.0p-53;
  return 2.0 * unit - 1.0;
}

}  // namespace

PerturbReport run_perturbation(const BayesNet& net, double noise, int trials, std::uint64_t seed) {
  if (!(noise >= 0.0 && noise <= 0.2)) throw UsageError("--noise must lie in [0, 0.2]");
  if (trials < 1) throw UsageError("--trials must be at least 1");
  require_valid(net);

  PerturbReport report;
  report.noise = noise;
  report.trials = trials;
  report.seed = seed;
  report.baseline = top3_of(net);
  const auto baseline_set = sorted(report.baseline.top3);

  std::mt19937_64 gen(seed);
  int agreeing = 0;
  double total_mass = 0.0;
  report.min_mass = 1.0;
  for (int t = 0; t < trials; ++t) {
    BayesNet shaken = net;
    for (auto& cpt : shaken.cpts) {
      for (auto& p : cpt.rows) p = std::clamp(p + noise * symmetric_unit(gen), 0.0, 1.0);
    }
    auto trial = top3_of(shaken);
    trial.agrees = sorted(trial.top3) == baseline_set;
    agreeing += trial.agrees;
    total_mass += trial.mass;
    report.min_mass = std::min(report.min_mass, trial.mass);
    report.runs.push_back(std::move(trial));
  }
  report.agreement = static_cast<double>(agreeing) / trials;
  report.mean_mass = total_mass / trials;
  return report;
}

std::string format_report(const PerturbReport& report) {
  char buf[160];
  std::string out;
  const auto line = [&](const std::string& name, const PerturbTrial& t, bool with_agreement) {
    std::string labels;
    for (const auto& l : t.top3) labels += (labels.empty() ? "" : ",") + l;
    std::snprintf(buf, sizeof buf, "%s top3=%s mass=%.9f%s\n", name.c_str(), labels.c_str(),
                  t.mass, !with_agreement ? "" : (t.agrees ? " agree=1" : " agree=0"));
    out += buf;
  };
  std::snprintf(buf, sizeof buf, "noise=%.9f trials=%d seed=%llu\n", report.noise, report.trials,
                static_cast<unsigned long long>(report.seed));
  out += buf;
  line("baseline", report.baseline, false);
  for (std::size_t i = 0; i < report.runs.size(); ++i) {
    line("trial " + std::to_string(i + 1), report.runs[i], true);
  }
  std::snprintf(buf, sizeof buf, "agreement=%.9f\nmin_mass=%.9f\nmean_mass=%.9f\n",
                report.agreement, report.min_mass, report.mean_mass);
  out += buf;
  return out;
}

}  // namespace qbi::cli
