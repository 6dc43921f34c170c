#include "qbi/model_io.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "qbi/errors.hpp"
#include "qbi/statevector.hpp"

namespace qbi {

namespace {

int line_of(const YAML::Node& node) { return node.Mark().line >= 0 ? node.Mark().line + 1 : 0; }

std::string scalar_or_throw(const YAML::Node& node, const std::string& what) {
  if (!node.IsScalar()) throw ParseError(what + " must be a scalar", line_of(node));
  return node.Scalar();
}

/// "1,0" -> row index with the first bit most significant.
std::size_t parse_row_key(const std::string& key, std::size_t n_parents, int line,
                          const std::string& var) {
  if (n_parents == 0) {
    if (!key.empty()) throw ParseError("root " + var + " takes a single row keyed \"\"", line);
    return 0;
  }
  std::size_t row = 0;
  std::size_t bits = 0;
  std::stringstream ss(key);
  std::string token;
  while (std::getline(ss, token, ',')) {
    const auto b = token.find_first_not_of(" \t");
    const auto e = token.find_last_not_of(" \t");
    token = b == std::string::npos ? "" : token.substr(b, e - b + 1);
    if (token != "0" && token != "1") {
      throw ParseError("row key \"" + key + "\" of " + var + " must be comma-separated bits", line);
    }
    row = (row << 1) | static_cast<std::size_t>(token == "1");
    ++bits;
  }
  if (bits != n_parents || (!key.empty() && key.back() == ',')) {
    throw ParseError("row key \"" + key + "\" of " + var + " needs " + std::to_string(n_parents) +
                         " bits",
                     line);
  }
  return row;
}

double parse_probability(const YAML::Node& node, const std::string& var) {
  const auto text = scalar_or_throw(node, "probability");
  double p = 0.0;
  try {
    p = node.as<double>();
  } catch (const YAML::Exception&) {
    throw ParseError("probability '" + text + "' for " + var + " is not a number", line_of(node));
  }
  if (!(p >= 0.0 && p <= 1.0)) {
    throw ParseError("probability out of range: " + text + " for " + var, line_of(node));
  }
  return p;
}

}  // namespace

BayesNet parse_model(std::string_view text) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::ParserException& e) {
    throw ParseError(e.msg, e.mark.line >= 0 ? e.mark.line + 1 : 0);
  }
  if (!root.IsMap()) throw ParseError("model must be a mapping with 'variables' and 'cpt'", 1);

  const auto vars = root["variables"];
  if (!vars || !vars.IsSequence()) {
    throw ParseError("'variables' must be a list of names", vars ? line_of(vars) : 1);
  }
  BayesNet net;
  std::map<std::string, int> by_name;
  for (const auto& v : vars) {
    const auto name = scalar_or_throw(v, "variable name");
    if (!is_identifier(name)) throw ParseError("invalid variable name '" + name + "'", line_of(v));
    if (by_name.count(name)) throw ValidationError({"duplicate name: " + name});
    by_name[name] = net.size();
    net.variables.push_back({name, net.size()});
  }

  const auto cpts = root["cpt"];
  if (!cpts || !cpts.IsMap()) {
    throw ParseError("'cpt' must map each variable to {parents, rows}", cpts ? line_of(cpts) : 1);
  }
  net.cpts.resize(net.variables.size());
  std::vector<bool> seen(net.variables.size(), false);
  for (const auto& entry : cpts) {
    const auto var = scalar_or_throw(entry.first, "cpt key");
    const auto it = by_name.find(var);
    if (it == by_name.end()) {
      throw ParseError("cpt given for undeclared variable '" + var + "'", line_of(entry.first));
    }
    const int v = it->second;
    if (seen[v]) throw ParseError("duplicate cpt for " + var, line_of(entry.first));
    seen[v] = true;

    const auto& body = entry.second;
    if (!body.IsMap()) throw ParseError("cpt of " + var + " must be a mapping", line_of(body));
    Cpt& cpt = net.cpts[v];
    if (const auto parents = body["parents"]) {
      if (!parents.IsSequence()) throw ParseError("parents of " + var + " must be a list", line_of(parents));
      for (const auto& p : parents) {
        const auto pname = scalar_or_throw(p, "parent name");
        const auto pit = by_name.find(pname);
        if (pit == by_name.end()) {
          throw ParseError("undeclared parent '" + pname + "' in cpt of " + var, line_of(p));
        }
        cpt.parents.push_back(pit->second);
      }
    }
    if (cpt.parents.size() >= static_cast<std::size_t>(kMaxQubits)) {
      throw ParseError("cpt of " + var + " has too many parents", line_of(body));
    }
    const auto rows = body["rows"];
    if (!rows || !rows.IsMap()) {
      throw ParseError("rows of " + var + " must be a mapping", rows ? line_of(rows) : line_of(body));
    }
    const std::size_t expected = std::size_t{1} << cpt.parents.size();
    std::vector<bool> have(expected, false);
    cpt.rows.assign(expected, 0.0);
    for (const auto& row : rows) {
      const auto key = row.first.IsNull() ? std::string{} : scalar_or_throw(row.first, "row key");
      const auto r = parse_row_key(key, cpt.parents.size(), line_of(row.first), var);
      if (have[r]) throw ParseError("duplicate row \"" + key + "\" for " + var, line_of(row.first));
      have[r] = true;
      cpt.rows[r] = parse_probability(row.second, var);
    }
    for (std::size_t r = 0; r < expected; ++r) {
      if (have[r]) continue;
      std::string label;
      for (std::size_t j = 0; j < cpt.parents.size(); ++j) {
        if (j) label += ",";
        label += net.name_of(cpt.parents[j]) + "=" + std::to_string(cpt.parent_bit(r, j));
      }
      throw ParseError("missing CPT row " + label + " for " + var, line_of(rows));
    }
  }
  for (std::size_t v = 0; v < seen.size(); ++v) {
    if (!seen[v]) throw ParseError("no cpt for variable " + net.variables[v].name, line_of(cpts));
  }

  require_valid(net);
  return net;
}

BayesNet load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open model file " + path.string(), 0);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_model(buf.str());
}

std::string render_model(const BayesNet& net) {
  std::ostringstream out;
  out << "variables: [";
  for (int i = 0; i < net.size(); ++i) out << (i ? ", " : "") << net.name_of(i);
  out << "]\ncpt:\n";
  char num[40];
  for (int v = 0; v < net.size(); ++v) {
    const auto& cpt = net.cpts[v];
    out << "  " << net.name_of(v) << ":\n    parents: [";
    for (std::size_t j = 0; j < cpt.parents.size(); ++j) {
      out << (j ? ", " : "") << net.name_of(cpt.parents[j]);
    }
    out << "]\n    rows: {";
    for (std::size_t r = 0; r < cpt.rows.size(); ++r) {
      std::string key;
      for (std::size_t j = 0; j < cpt.parents.size(); ++j) {
        if (j) key += ",";
        key += std::to_string(cpt.parent_bit(r, j));
      }
      std::snprintf(num, sizeof num, "%.17g", cpt.rows[r]);
      out << (r ? ", " : "") << '"' << key << "\": " << num;
    }
    out << "}\n";
  }
  return out.str();
}

}  // namespace qbi
