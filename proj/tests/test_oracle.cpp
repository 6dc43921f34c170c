#include <random>

#include <gtest/gtest.h>

#include "qbi/circuit.hpp"
#include "qbi/oracle.hpp"
#include "support/random_nets.hpp"

using namespace qbi;

namespace {

BayesNet chain_ab() {
  BayesNet net;
  net.variables = {{"A", 0}, {"B", 1}};
  net.cpts = {{{}, {0.2}}, {{0}, {0.1, 0.9}}};
  return net;
}

}  // namespace

TEST(EnumerateJoint, SingleRoot) {
  BayesNet net;
  net.variables = {{"A", 0}};
  net.cpts = {{{}, {0.3}}};
  const auto j = enumerate_joint(net);
  EXPECT_NEAR(j[0], 0.7, 1e-15);
  EXPECT_NEAR(j[1], 0.3, 1e-15);
}

TEST(EnumerateJoint, TwoFairRoots) {
  BayesNet net;
  net.variables = {{"A", 0}, {"B", 1}};
  net.cpts = {{{}, {0.5}}, {{}, {0.5}}};
  EXPECT_EQ(enumerate_joint(net).probabilities(), Eigen::Vector4d::Constant(0.25));
}

TEST(EnumerateJoint, ChainHandComputed) {
  const auto j = enumerate_joint(chain_ab());
  // Labels are (A, B); index bit 0 is A.
  EXPECT_EQ(j.label(0b10), "01");
  EXPECT_NEAR(j[0b00], 0.72, 1e-15);
  EXPECT_NEAR(j[0b10], 0.08, 1e-15);
  EXPECT_NEAR(j[0b01], 0.02, 1e-15);
  EXPECT_NEAR(j[0b11], 0.18, 1e-15);
}

TEST(EnumerateJoint, RejectsInvalid) {
  auto net = chain_ab();
  net.cpts[1].rows.pop_back();
  EXPECT_THROW(enumerate_joint(net), ValidationError);
}

TEST(OracleQuery, ReadsCptDirectly) {
  const auto q = oracle_query(chain_ab(), {1}, {{{0, 1}}});
  EXPECT_NEAR(q[1], 0.9, 1e-15);
}

TEST(OracleQuery, EmptyEvidenceMatchesQuantumMarginal) {
  const auto net = chain_ab();
  const auto j = joint_distribution(simulate(compile(net)), net);
  EXPECT_NEAR(oracle_query(net, {1}, {})[1], marginal(j, {1})[1], 1e-9);
}

TEST(OracleQuery, UsageErrors) {
  EXPECT_THROW(oracle_query(chain_ab(), {0}, {{{0, 1}}}), UsageError);
  EXPECT_THROW(oracle_query(chain_ab(), {3}, {}), UsageError);
  EXPECT_THROW(oracle_query(chain_ab(), {}, {}), UsageError);
}

TEST(OracleProperty, RootMarginalEqualsPrior) {
  std::mt19937_64 gen(71);
  for (int trial = 0; trial < 100; ++trial) {
    const auto net = test_support::random_net(gen);
    const auto j = enumerate_joint(net);
    EXPECT_NEAR(j.total(), 1.0, 1e-12);
    for (int v = 0; v < net.size(); ++v) {
      if (net.cpts[v].parents.empty()) EXPECT_NEAR(marginal(j, {v})[1], net.cpts[v].rows[0], 1e-15);
    }
  }
}

TEST(OracleProperty, EverySingleTargetConditionalMatchesQuantum) {
  std::mt19937_64 gen(72);
  for (int trial = 0; trial < 40; ++trial) {
    const auto net = test_support::random_net(gen, {5, 5, 3, false});
    const auto j = joint_distribution(simulate(compile(net)), net);
    for (int t = 0; t < 5; ++t) {
      for (int e = 0; e < 5; ++e) {
        if (e == t) continue;
        for (int b = 0; b < 2; ++b) {
          const Evidence ev{{{e, b}}};
          const auto o = oracle_query(net, {t}, ev);
          const auto q = conditional(j, {t}, ev);
          EXPECT_LT((o.probabilities() - q.probabilities()).cwiseAbs().maxCoeff(), 1e-9);
        }
      }
    }
  }
}
