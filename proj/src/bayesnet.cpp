#include "qbi/bayesnet.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <queue>
#include <set>

#include "qbi/errors.hpp"
#include "qbi/statevector.hpp"

namespace qbi {

namespace {

struct KahnResult {
  std::vector<int> order;
  std::vector<bool> done;
};

// Parents outside [0, n) are ignored here; validate() reports them separately.
KahnResult kahn(const BayesNet& net) {
  const int n = net.size();
  std::vector<int> pending(n, 0);
  std::vector<std::vector<int>> children(n);
  for (int v = 0; v < n && v < static_cast<int>(net.cpts.size()); ++v) {
    for (int p : net.cpts[v].parents) {
      if (p < 0 || p >= n) continue;
      ++pending[v];
      children[p].push_back(v);
    }
  }
  std::priority_queue<int, std::vector<int>, std::greater<>> ready;
  for (int v = 0; v < n; ++v) {
    if (pending[v] == 0) ready.push(v);
  }
  KahnResult result{{}, std::vector<bool>(n, false)};
  while (!ready.empty()) {
    const int v = ready.top();
    ready.pop();
    result.order.push_back(v);
    result.done[v] = true;
    for (int c : children[v]) {
      if (--pending[c] == 0) ready.push(c);
    }
  }
  return result;
}

// Every unfinished node keeps at least one unfinished parent, so walking
// parents from any of them must revisit a node.
std::string describe_cycle(const BayesNet& net, const std::vector<bool>& done) {
  const int n = net.size();
  int v = 0;
  while (done[v]) ++v;
  std::vector<int> walk;
  std::vector<int> seen_at(n, -1);
  while (seen_at[v] < 0) {
    seen_at[v] = static_cast<int>(walk.size());
    walk.push_back(v);
    for (int p : net.cpts[v].parents) {
      if (p >= 0 && p < n && !done[p]) {
        v = p;
        break;
      }
    }
  }
  std::vector<int> cycle(walk.begin() + seen_at[v], walk.end());
  std::reverse(cycle.begin(), cycle.end());  // parent -> child direction
  std::rotate(cycle.begin(), std::min_element(cycle.begin(), cycle.end()), cycle.end());
  if (cycle.size() == 1) return "cycle: " + net.name_of(cycle[0]) + " is its own parent";
  if (cycle.size() == 2) return "cycle: " + net.name_of(cycle[0]) + "↔" + net.name_of(cycle[1]);
  std::string out = "cycle: ";
  for (int c : cycle) out += net.name_of(c) + "→";
  return out + net.name_of(cycle[0]);
}

std::string row_label(const BayesNet& net, const Cpt& cpt, std::size_t row) {
  std::string out;
  for (std::size_t j = 0; j < cpt.parents.size(); ++j) {
    const int p = cpt.parents[j];
    if (!out.empty()) out += ",";
    out += (p >= 0 && p < net.size() ? net.name_of(p) : "#" + std::to_string(p)) + "=" +
           std::to_string(cpt.parent_bit(row, j));
  }
  return out;
}

}  // namespace

bool is_identifier(std::string_view name) {
  if (name.empty()) return false;
  const auto alpha = [](char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_'; };
  if (!alpha(name.front())) return false;
  return std::all_of(name.begin(), name.end(),
                     [&](char c) { return alpha(c) || (c >= '0' && c <= '9'); });
}

std::optional<int> BayesNet::find(std::string_view name) const {
  for (const auto& v : variables) {
    if (v.name == name) return v.index;
  }
  return std::nullopt;
}

int BayesNet::index_of(std::string_view name) const {
  if (auto i = find(name)) return *i;
  throw UsageError("unknown variable '" + std::string(name) + "'");
}

std::vector<std::string> validate(const BayesNet& net) {
  std::vector<std::string> out;
  const int n = net.size();
  if (n == 0) out.emplace_back("network has no variables");
  if (n > kMaxQubits) {
    out.push_back("network has " + std::to_string(n) + " variables; the cap is " +
                  std::to_string(kMaxQubits));
  }

  std::set<std::string> names;
  for (int i = 0; i < n; ++i) {
    const auto& v = net.variables[i];
    if (v.index != i) {
      out.push_back("variable " + v.name + " has index " + std::to_string(v.index) +
                    " but is declared at position " + std::to_string(i));
    }
    if (!is_identifier(v.name)) out.push_back("invalid variable name '" + v.name + "'");
    if (!names.insert(v.name).second) out.push_back("duplicate name: " + v.name);
  }

  if (static_cast<int>(net.cpts.size()) != n) {
    out.push_back("expected " + std::to_string(n) + " CPTs, found " +
                  std::to_string(net.cpts.size()));
  }

  bool structure_ok = static_cast<int>(net.cpts.size()) == n;
  for (int v = 0; v < n && v < static_cast<int>(net.cpts.size()); ++v) {
    const auto& cpt = net.cpts[v];
    const auto& name = net.name_of(v);
    std::set<int> parents;
    bool parents_ok = true;
    for (int p : cpt.parents) {
      if (p < 0 || p >= n) {
        out.push_back("dangling parent: " + name + " references undeclared variable #" +
                      std::to_string(p));
        parents_ok = structure_ok = false;
      } else if (p == v) {
        out.push_back("cycle: " + name + " is its own parent");
        parents_ok = structure_ok = false;
      } else if (!parents.insert(p).second) {
        out.push_back("duplicate parent " + net.name_of(p) + " in CPT of " + name);
        parents_ok = false;
      }
    }
    if (cpt.parents.size() >= static_cast<std::size_t>(kMaxQubits)) {
      out.push_back("CPT of " + name + " has too many parents");
      continue;
    }
    const std::size_t expected = std::size_t{1} << cpt.parents.size();
    if (cpt.rows.size() < expected) {
      for (std::size_t r = cpt.rows.size(); r < expected; ++r) {
        out.push_back("missing CPT row " + row_label(net, cpt, r) + " for " + name);
      }
    } else if (cpt.rows.size() > expected) {
      out.push_back("CPT of " + name + " has " + std::to_string(cpt.rows.size()) +
                    " rows, expected " + std::to_string(expected));
    }
    for (std::size_t r = 0; r < cpt.rows.size(); ++r) {
      const double p = cpt.rows[r];
      if (!(p >= 0.0 && p <= 1.0)) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.17g", p);
        const std::string where = parents_ok && r < expected ? "[" + row_label(net, cpt, r) + "]" : "";
        out.push_back("probability out of range: P(" + name + "=1" + where + ") = " + buf);
      }
    }
  }

  if (structure_ok && n > 0) {
    const auto k = kahn(net);
    if (static_cast<int>(k.order.size()) != n) out.push_back(describe_cycle(net, k.done));
  }
  return out;
}

void require_valid(const BayesNet& net) {
  auto violations = validate(net);
  if (!violations.empty()) throw ValidationError(std::move(violations));
}

std::vector<int> topological_order(const BayesNet& net) {
  if (static_cast<int>(net.cpts.size()) != net.size()) {
    throw ValidationError({"CPT count does not match variable count"});
  }
  auto k = kahn(net);
  if (static_cast<int>(k.order.size()) != net.size()) {
    throw ValidationError({describe_cycle(net, k.done)});
  }
  return std::move(k.order);
}

}  // namespace qbi
