#pragma once

#include <algorithm>
#include <numeric>
#include <random>
#include <string>

#include "qbi/bayesnet.hpp"

namespace qbi::test_support {

struct RandomNetOptions {
  int min_vars = 2;
  int max_vars = 5;
  int max_parents = 3;
  bool roots_only = false;
};

/// Random DAG whose topological order is a random permutation of the
/// declaration order, CPT entries uniform in [0, 1].
inline BayesNet random_net(std::mt19937_64& gen, const RandomNetOptions& opt = {}) {
  std::uniform_int_distribution<int> count(opt.min_vars, opt.max_vars);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int n = count(gen);

  std::vector<int> rank(n);
  std::iota(rank.begin(), rank.end(), 0);
  std::shuffle(rank.begin(), rank.end(), gen);  // rank[k] = variable placed k-th causally

  BayesNet net;
  net.cpts.resize(n);
  for (int i = 0; i < n; ++i) net.variables.push_back({"V" + std::to_string(i), i});
  for (int k = 0; k < n; ++k) {
    const int v = rank[k];
    auto& cpt = net.cpts[v];
    if (!opt.roots_only && k > 0) {
      std::vector<int> earlier(rank.begin(), rank.begin() + k);
      std::shuffle(earlier.begin(), earlier.end(), gen);
      std::uniform_int_distribution<int> how_many(0, std::min(k, opt.max_parents));
      earlier.resize(how_many(gen));
      cpt.parents = earlier;
    }
    cpt.rows.resize(std::size_t{1} << cpt.parents.size());
    for (auto& p : cpt.rows) p = unit(gen);
  }
  return net;
}

}  // namespace qbi::test_support
