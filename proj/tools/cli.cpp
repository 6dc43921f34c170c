#include "cli.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "perturb.hpp"
#include "qbi/circuit.hpp"
#include "qbi/errors.hpp"
#include "qbi/inference.hpp"
#include "qbi/metrics.hpp"
#include "qbi/model_io.hpp"
#include "qbi/oracle.hpp"

namespace qbi::cli {

namespace {

std::string fixed(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
  return buf;
}

std::string prob(double p) { return fixed(p, 12); }
std::string metric(double v) { return fixed(v, 9); }

Binding parse_binding(const BayesNet& net, const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos) throw UsageError("expected NAME=BIT, got '" + text + "'");
  const auto bit = text.substr(eq + 1);
  if (bit != "0" && bit != "1") throw UsageError("bit in '" + text + "' must be 0 or 1");
  return {net.index_of(text.substr(0, eq)), bit == "1"};
}

Evidence parse_evidence(const BayesNet& net, const std::vector<std::string>& items) {
  Evidence ev;
  for (const auto& item : items) {
    const auto b = parse_binding(net, item);
    for (const auto& seen : ev.bindings) {
      if (seen.variable == b.variable) throw UsageError(net.name_of(b.variable) + " observed twice");
    }
    ev.bindings.push_back(b);
  }
  return ev;
}

void check_disjoint(const BayesNet& net, const std::vector<int>& targets, const Evidence& ev) {
  for (const auto& b : ev.bindings) {
    if (std::find(targets.begin(), targets.end(), b.variable) != targets.end()) {
      throw UsageError(net.name_of(b.variable) + " is both queried and observed");
    }
  }
}

std::vector<int> parse_names(const BayesNet& net, const std::string& list) {
  std::vector<int> out;
  std::stringstream ss(list);
  std::string name;
  while (std::getline(ss, name, ',')) out.push_back(net.index_of(name));
  if (out.empty()) throw UsageError("empty variable list");
  return out;
}

std::string describe(const BayesNet& net, const std::vector<int>& targets, const Evidence& ev) {
  std::string out = "P(";
  for (std::size_t i = 0; i < targets.size(); ++i) out += (i ? "," : "") + net.name_of(targets[i]);
  if (!ev.empty()) {
    out += " | ";
    for (std::size_t i = 0; i < ev.bindings.size(); ++i) {
      out += (i ? "," : "") + net.name_of(ev.bindings[i].variable) + "=" +
             std::to_string(ev.bindings[i].bit);
    }
  }
  return out + ")";
}

Distribution quantum_joint(const BayesNet& net) { return joint_distribution(simulate(compile(net)), net); }

/// Entry indices sorted by ascending display label.
std::vector<std::uint64_t> display_order(const Distribution& d) {
  std::vector<std::uint64_t> idx(static_cast<std::size_t>(d.size()));
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(),
            [&](auto a, auto b) { return d.display_key(a) < d.display_key(b); });
  return idx;
}

void write_csv(std::ostream& out, const Distribution& d) {
  out << "outcome,probability\n";
  for (auto i : display_order(d)) out << d.label(i) << "," << prob(d[static_cast<Eigen::Index>(i)]) << "\n";
}

void write_json(std::ostream& out, const BayesNet& net, const Distribution& d, const Evidence& ev) {
  nlohmann::ordered_json j;
  j["scope"] = nlohmann::json::array();
  for (int v : d.scope()) j["scope"].push_back(net.name_of(v));
  j["evidence"] = nlohmann::ordered_json::object();
  for (const auto& b : ev.bindings) j["evidence"][net.name_of(b.variable)] = b.bit;
  j["outcomes"] = nlohmann::json::array();
  for (auto i : display_order(d)) {
    j["outcomes"].push_back({{"outcome", d.label(i)}, {"probability", d[static_cast<Eigen::Index>(i)]}});
  }
  out << j.dump(2) << "\n";
}

void write_ranked(std::ostream& out, const Distribution& d, const std::vector<RankedOutcome>& rows) {
  out << "outcome,probability,cumulative\n";
  for (const auto& r : rows) {
    out << d.label(r.index) << "," << prob(r.probability) << "," << prob(r.cumulative) << "\n";
  }
}

/// Reads an `outcome,probability` export. Outcome label character k becomes
/// scope position k.
std::map<std::string, double> read_distribution_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path, 0);
  std::map<std::string, double> rows;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || (lineno == 1 && line.rfind("outcome", 0) == 0)) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw ParseError(path + ": expected outcome,probability", lineno);
    const auto label = line.substr(0, comma);
    if (label.empty() || label.find_first_not_of("01") != std::string::npos) {
      throw ParseError(path + ": outcome '" + label + "' is not a bit string", lineno);
    }
    try {
      rows[label] = std::stod(line.substr(comma + 1));
    } catch (const std::exception&) {
      throw ParseError(path + ": bad probability", lineno);
    }
  }
  if (rows.empty()) throw ParseError(path + ": no rows", lineno);
  return rows;
}

Distribution to_distribution(const std::map<std::string, double>& rows) {
  const auto width = rows.begin()->first.size();
  if (width > static_cast<std::size_t>(kMaxQubits)) throw CapacityError("outcome labels too long");
  std::vector<int> scope(width);
  for (std::size_t k = 0; k < width; ++k) scope[k] = static_cast<int>(k);
  Eigen::VectorXd probs = Eigen::VectorXd::Zero(Eigen::Index{1} << width);
  for (const auto& [label, p] : rows) {
    if (label.size() != width) throw UsageError("outcome labels differ in length");
    std::uint64_t index = 0;
    for (std::size_t k = 0; k < width; ++k) index |= std::uint64_t(label[k] == '1') << k;
    probs(static_cast<Eigen::Index>(index)) = p;
  }
  return Distribution(std::move(scope), std::move(probs));
}

struct QueryArgs {
  std::string model;
  std::vector<std::string> targets;
  std::vector<std::string> evidence;
  std::string engine = "quantum";
};

void cmd_query(const QueryArgs& a, std::ostream& out) {
  const auto net = load_model(a.model);
  std::vector<int> targets;
  Evidence fixed_targets;
  for (const auto& t : a.targets) {
    if (t.find('=') != std::string::npos) {
      const auto b = parse_binding(net, t);
      targets.push_back(b.variable);
      fixed_targets.bindings.push_back(b);
    } else {
      targets.push_back(net.index_of(t));
    }
  }
  const auto evidence = parse_evidence(net, a.evidence);
  check_disjoint(net, targets, evidence);

  std::vector<std::pair<std::string, Distribution>> results;
  if (a.engine == "quantum" || a.engine == "both") {
    results.emplace_back("quantum", conditional(quantum_joint(net), targets, evidence));
  }
  if (a.engine == "classical" || a.engine == "both") {
    results.emplace_back("classical", oracle_query(net, targets, evidence));
  }

  const auto shown = [&](const Distribution& d, std::uint64_t i) {
    return std::all_of(fixed_targets.bindings.begin(), fixed_targets.bindings.end(),
                       [&](const Binding& b) {
                         return static_cast<int>((i >> d.position_of(b.variable)) & 1U) == b.bit;
                       });
  };
  for (const auto& [engine, d] : results) {
    out << "# " << engine << " " << describe(net, targets, evidence) << "\n";
    for (auto i : display_order(d)) {
      if (shown(d, i)) out << d.label(i) << " " << prob(d[static_cast<Eigen::Index>(i)]) << "\n";
    }
  }
  if (results.size() == 2) {
    const double diff =
        (results[0].second.probabilities() - results[1].second.probabilities()).cwiseAbs().maxCoeff();
    char buf[64];
    std::snprintf(buf, sizeof buf, "max_abs_diff=%.3e\n", diff);
    out << buf;
  }
}

struct DistArgs {
  std::string model;
  bool joint = false;
  std::string marginal;
  std::string conditional;
  std::string heatmap;
  std::string order;
  std::vector<std::string> evidence;
  std::string format = "csv";
  std::string output;
};

void cmd_dist(const DistArgs& a, std::ostream& out) {
  const auto net = load_model(a.model);
  const int modes = int(a.joint) + int(!a.marginal.empty()) + int(!a.conditional.empty()) +
                    int(!a.heatmap.empty());
  if (modes != 1) throw UsageError("choose exactly one of --joint, --marginal, --conditional, --heatmap");
  if (!a.evidence.empty() && a.conditional.empty()) {
    throw UsageError("--evidence applies only to --conditional");
  }
  if (!a.order.empty() && !a.joint) throw UsageError("--order applies only to --joint");
  const auto evidence = parse_evidence(net, a.evidence);
  const auto joint = quantum_joint(net);

  std::ofstream file;
  if (!a.output.empty()) {
    file.open(a.output, std::ios::binary);
    if (!file) throw UsageError("cannot write " + a.output);
  }
  std::ostream& sink = a.output.empty() ? out : file;

  if (!a.heatmap.empty()) {
    const auto pair = parse_names(net, a.heatmap);
    if (pair.size() != 2) throw UsageError("--heatmap takes exactly two variables");
    const auto m = marginal(joint, pair);  // entry = row | col << 1
    const auto& row = net.name_of(pair[0]);
    const auto& col = net.name_of(pair[1]);
    if (a.format == "json") {
      nlohmann::ordered_json j;
      j["rows"] = row;
      j["columns"] = col;
      j["matrix"] = {{m[0], m[2]}, {m[1], m[3]}};
      sink << j.dump(2) << "\n";
    } else {
      sink << row << "\\" << col << ",0,1\n";
      sink << "0," << prob(m[0]) << "," << prob(m[2]) << "\n";
      sink << "1," << prob(m[1]) << "," << prob(m[3]) << "\n";
    }
    return;
  }

  Distribution d = joint;
  if (a.joint && !a.order.empty()) {
    auto order = parse_names(net, a.order);
    if (static_cast<int>(order.size()) != net.size()) {
      throw UsageError("--order must list every variable");
    }
    d = marginal(joint, order);
  } else if (!a.marginal.empty()) {
    d = marginal(joint, parse_names(net, a.marginal));
  } else if (!a.conditional.empty()) {
    const auto targets = parse_names(net, a.conditional);
    check_disjoint(net, targets, evidence);
    d = conditional(joint, targets, evidence);
  }
  if (a.format == "json") {
    write_json(sink, net, d, evidence);
  } else {
    write_csv(sink, d);
  }
}

struct MetricsArgs {
  std::string model;
  std::string entropy;
  std::string posterior_entropy;
  std::vector<std::string> evidence;
  std::string mi;
  std::vector<std::string> fidelity;
  bool cdf = false;
  std::size_t top = 0;
};

void cmd_metrics(const MetricsArgs& a, std::ostream& out) {
  const auto net = load_model(a.model);
  if (a.entropy.empty() && a.posterior_entropy.empty() && a.mi.empty() && a.fidelity.empty() &&
      !a.cdf && a.top == 0) {
    throw UsageError("no metric selected");
  }
  if (!a.evidence.empty() && a.posterior_entropy.empty()) {
    throw UsageError("--evidence applies only to --posterior-entropy");
  }
  const auto joint = quantum_joint(net);
  std::vector<MetricReport> reports;
  if (!a.entropy.empty()) {
    const int v = net.index_of(a.entropy);
    reports.push_back({"entropy(" + a.entropy + ")", entropy(marginal(joint, {v}))});
  }
  if (!a.posterior_entropy.empty()) {
    const int q = net.index_of(a.posterior_entropy);
    const auto ev = parse_evidence(net, a.evidence);
    check_disjoint(net, {q}, ev);
    auto label = describe(net, {q}, ev);
    label = "posterior_entropy" + label.substr(1);
    reports.push_back({label, posterior_entropy(joint, q, ev)});
  }
  if (!a.mi.empty()) {
    const auto pair = parse_names(net, a.mi);
    if (pair.size() != 2) throw UsageError("--mi takes exactly two variables");
    reports.push_back({"mi(" + net.name_of(pair[0]) + ";" + net.name_of(pair[1]) + ")",
                       mutual_information(joint, pair[0], pair[1])});
  }
  if (!a.fidelity.empty()) {
    const auto p = read_distribution_csv(a.fidelity.at(0));
    const auto q = read_distribution_csv(a.fidelity.at(1));
    const bool same_outcomes =
        p.size() == q.size() &&
        std::equal(p.begin(), p.end(), q.begin(), [](const auto& l, const auto& r) { return l.first == r.first; });
    if (!same_outcomes) throw UsageError("fidelity inputs cover different outcome sets");
    reports.push_back({"fidelity", fidelity(to_distribution(p), to_distribution(q))});
  }
  for (const auto& r : reports) out << r.name << "=" << metric(r.value) << "\n";
  if (a.cdf) write_ranked(out, joint, cdf_over_sorted_outcomes(joint));
  if (a.top > 0) write_ranked(out, joint, top_k(joint, a.top));
}

}  // namespace

int report_error(const std::exception& e, std::ostream& err) {
  if (dynamic_cast<const ImpossibleEvidenceError*>(&e)) {
    err << "error: " << e.what() << "\n";
    return kInferenceError;
  }
  if (dynamic_cast<const InvariantError*>(&e) || !dynamic_cast<const Error*>(&e)) {
    err << "internal error: " << e.what() << "\n";
    return kInternalError;
  }
  err << "error: " << e.what() << "\n";
  return kInputError;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bayesian-network inference on an exact quantum statevector", "qbi"};
  app.require_subcommand(1);

  QueryArgs query;
  auto* q = app.add_subcommand("query", "Print P(targets | evidence)");
  q->add_option("model", query.model, "Model file (.qbn)")->required();
  q->add_option("--target", query.targets, "Target NAME or NAME=BIT")->required()->delimiter(',');
  q->add_option("--evidence", query.evidence, "Observed NAME=BIT")->delimiter(',');
  q->add_option("--engine", query.engine, "quantum, classical or both")
      ->check(CLI::IsMember({"quantum", "classical", "both"}));

  DistArgs dist;
  auto* d = app.add_subcommand("dist", "Export a distribution as CSV or JSON");
  d->add_option("model", dist.model, "Model file (.qbn)")->required();
  d->add_flag("--joint", dist.joint, "Full joint distribution");
  d->add_option("--marginal", dist.marginal, "Comma-separated variables");
  d->add_option("--conditional", dist.conditional, "Comma-separated target variables");
  d->add_option("--heatmap", dist.heatmap, "Two variables: rows,columns");
  d->add_option("--order", dist.order, "Display order of the joint's variables");
  d->add_option("--evidence", dist.evidence, "Observed NAME=BIT")->delimiter(',');
  d->add_option("--format", dist.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  d->add_option("--output", dist.output, "Write to this file instead of stdout");

  MetricsArgs metrics;
  auto* m = app.add_subcommand("metrics", "Entropy, mutual information, fidelity, CDF, top-k");
  m->add_option("model", metrics.model, "Model file (.qbn)")->required();
  m->add_option("--entropy", metrics.entropy, "Entropy of one variable's marginal");
  m->add_option("--posterior-entropy", metrics.posterior_entropy, "Entropy of a posterior");
  m->add_option("--evidence", metrics.evidence, "Observed NAME=BIT")->delimiter(',');
  m->add_option("--mi", metrics.mi, "Mutual information A,B");
  m->add_option("--fidelity", metrics.fidelity, "Two outcome,probability CSV files")->expected(2);
  m->add_flag("--cdf", metrics.cdf, "Outcomes by descending probability with cumulative mass");
  m->add_option("--top", metrics.top, "The k most probable outcomes")->check(CLI::PositiveNumber);

  std::string perturb_model;
  double noise = 0.0;
  int trials = 1;
  std::uint64_t seed = 0;
  auto* p = app.add_subcommand("perturb", "Top-3 stability under CPT noise");
  p->add_option("model", perturb_model, "Model file (.qbn)")->required();
  p->add_option("--noise", noise, "Half-width of the uniform noise, in [0, 0.2]")->required();
  p->add_option("--trials", trials, "Number of perturbed runs")->required();
  p->add_option("--seed", seed, "Generator seed (64-bit unsigned)");

  std::string circuit_model;
  auto* c = app.add_subcommand("circuit", "Dump the compiled gate list");
  c->add_option("model", circuit_model, "Model file (.qbn)")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kSuccess : kInputError;
  }

  try {
    if (*q) cmd_query(query, out);
    if (*d) cmd_dist(dist, out);
    if (*m) cmd_metrics(metrics, out);
    if (*p) out << format_report(run_perturbation(load_model(perturb_model), noise, trials, seed));
    if (*c) out << dump_circuit(compile(load_model(circuit_model)));
  } catch (const std::exception& e) {
    return report_error(e, err);
  }
  return kSuccess;
}

}  // namespace qbi::cli
