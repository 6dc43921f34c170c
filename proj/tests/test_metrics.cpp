#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "qbi/circuit.hpp"
#include "qbi/metrics.hpp"
#include "qbi/model_io.hpp"
#include "qbi/oracle.hpp"
#include "support/random_nets.hpp"

using namespace qbi;

namespace {

Distribution dist1(double p0, double p1) { return Distribution({0}, Eigen::Vector2d(p0, p1)); }

Distribution quantum_joint(const BayesNet& net) { return joint_distribution(simulate(compile(net)), net); }

BayesNet ids() { return load_model(std::string(QBI_MODELS_DIR) + "/ids.qbn"); }

BayesNet copy_chain(double prior) {
  BayesNet net;
  net.variables = {{"A", 0}, {"B", 1}};
  net.cpts = {{{}, {prior}}, {{0}, {0.0, 1.0}}};
  return net;
}

double binary_entropy(double p) { return -(p * std::log2(p) + (1 - p) * std::log2(1 - p)); }

}  // namespace

TEST(Entropy, Degenerate) { EXPECT_EQ(entropy(dist1(1.0, 0.0)), 0.0); }

TEST(Entropy, FairCoinIsOneBit) { EXPECT_NEAR(entropy(dist1(0.5, 0.5)), 1.0, 1e-15); }

TEST(Entropy, QuarterThreeQuarters) {
  // 30-digit mpmath evaluation: 0.811278124459132863909695792039
  EXPECT_NEAR(entropy(dist1(0.25, 0.75)), 0.811278124459132864, 1e-15);
}

TEST(PosteriorEntropy, FairRootNoEvidence) {
  BayesNet net;
  net.variables = {{"C", 0}};
  net.cpts = {{{}, {0.5}}};
  EXPECT_NEAR(posterior_entropy(quantum_joint(net), 0, {}), 1.0, 1e-12);
}

TEST(PosteriorEntropy, CopyChainGivenParentIsZero) {
  const auto j = quantum_joint(copy_chain(0.5));
  EXPECT_NEAR(posterior_entropy(j, 1, {{{0, 1}}}), 0.0, 1e-12);
  EXPECT_NEAR(posterior_entropy(j, 1, {{{0, 0}}}), 0.0, 1e-12);
}

TEST(PosteriorEntropy, IdsFalseAlarmGivenSpike) {
  const auto net = ids();
  const double oracle = entropy(oracle_query(net, {2}, {{{0, 1}}}));
  const double h = posterior_entropy(quantum_joint(net), 2, {{{0, 1}}});
  EXPECT_NEAR(h, oracle, 1e-12);
  EXPECT_NEAR(h, binary_entropy(0.8675), 1e-12);
}

TEST(PosteriorEntropy, ImpossibleEvidenceForwarded) {
  const auto j = quantum_joint(copy_chain(0.0));
  EXPECT_THROW(posterior_entropy(j, 1, {{{0, 1}}}), ImpossibleEvidenceError);
}

TEST(MutualInformation, IndependentRootsIsZero) {
  BayesNet net;
  net.variables = {{"A", 0}, {"B", 1}};
  net.cpts = {{{}, {0.3}}, {{}, {0.8}}};
  EXPECT_NEAR(mutual_information(quantum_joint(net), 0, 1), 0.0, 1e-12);
}

TEST(MutualInformation, CopyingIsOneBit) {
  EXPECT_NEAR(mutual_information(quantum_joint(copy_chain(0.5)), 0, 1), 1.0, 1e-12);
}

TEST(MutualInformation, IdsSpikeAndFalseAlarm) {
  const auto net = ids();
  const auto j = quantum_joint(net);
  const double mi = mutual_information(j, 0, 2);
  const double decomposed =
      entropy(marginal(j, {0})) + entropy(marginal(j, {2})) - entropy(marginal(j, {0, 2}));
  EXPECT_NEAR(mi, decomposed, 1e-9);
  EXPECT_NEAR(mi, mutual_information(enumerate_joint(net), 0, 2), 1e-12);
  EXPECT_NEAR(mi, 0.011931535585217184, 1e-9);  // exact-fraction joint, float64 logs
  EXPECT_NEAR(mutual_information(j, 0, 1), 0.0, 1e-12);
}

TEST(MutualInformation, SameVariableRejected) {
  EXPECT_THROW(mutual_information(quantum_joint(ids()), 1, 1), UsageError);
}

TEST(Fidelity, SelfIsOne) {
  const auto j = quantum_joint(ids());
  EXPECT_NEAR(fidelity(j, j), 1.0, 1e-12);
}

TEST(Fidelity, DisjointIsZero) { EXPECT_EQ(fidelity(dist1(1, 0), dist1(0, 1)), 0.0); }

TEST(Fidelity, HalfAgainstDelta) { EXPECT_NEAR(fidelity(dist1(0.5, 0.5), dist1(1, 0)), 0.5, 1e-15); }

TEST(Fidelity, ScopeMismatch) {
  EXPECT_THROW(fidelity(dist1(0.5, 0.5), Distribution({1}, Eigen::Vector2d(0.5, 0.5))), UsageError);
}

TEST(Cdf, Degenerate) {
  const auto c = cdf_over_sorted_outcomes(dist1(0, 1));
  EXPECT_EQ(c[0].index, 1u);
  EXPECT_EQ(c[0].cumulative, 1.0);
}

TEST(Cdf, UniformSteps) {
  const Distribution d({0, 1}, Eigen::Vector4d::Constant(0.25));
  const auto c = cdf_over_sorted_outcomes(d);
  ASSERT_EQ(c.size(), 4u);
  for (int k = 0; k < 4; ++k) EXPECT_DOUBLE_EQ(c[k].cumulative, 0.25 * (k + 1));
  // Ties go by ascending display label: 00, 01, 10, 11 -> indices 0, 2, 1, 3.
  EXPECT_EQ(c[1].index, 2u);
  EXPECT_EQ(c[2].index, 1u);
}

TEST(Cdf, IdsHeadMatchesOracle) {
  const auto net = ids();
  const auto q = cdf_over_sorted_outcomes(quantum_joint(net));
  const auto o = cdf_over_sorted_outcomes(enumerate_joint(net));
  for (int k = 0; k < 8; ++k) {
    EXPECT_EQ(q[k].index, o[k].index);
    EXPECT_NEAR(q[k].cumulative, o[k].cumulative, 1e-12);
  }
  EXPECT_NEAR(q[2].cumulative, 0.89929, 1e-12);
  EXPECT_NEAR(q.back().cumulative, 1.0, 1e-9);
}

TEST(TopK, KOneOnDegenerate) {
  const auto t = top_k(dist1(1, 0), 1);
  ASSERT_EQ(t.size(), 1u);
  EXPECT_EQ(t[0].index, 0u);
  EXPECT_EQ(t[0].probability, 1.0);
}

TEST(TopK, LargerThanSupport) { EXPECT_EQ(top_k(dist1(0.3, 0.7), 10).size(), 2u); }

TEST(TopK, ZeroRejected) { EXPECT_THROW(top_k(dist1(0.3, 0.7), 0), UsageError); }

TEST(TopK, IdsTopFive) {
  const auto net = ids();
  const auto j = quantum_joint(net);
  const auto t = top_k(j, 5);
  const char* labels[] = {"011", "111", "001", "100", "000"};
  ASSERT_EQ(t.size(), 5u);
  for (int k = 0; k < 5; ++k) EXPECT_EQ(j.label(t[k].index), labels[k]);
  const auto o = top_k(enumerate_joint(net), 5);
  for (int k = 0; k < 5; ++k) EXPECT_NEAR(t[k].probability, o[k].probability, 1e-12);
}

TEST(MetricsProperty, IdentitiesOverRandomNets) {
  std::mt19937_64 gen(61);
  for (int trial = 0; trial < 150; ++trial) {
    const auto net = test_support::random_net(gen);
    const auto j = quantum_joint(net);
    const int n = net.size();
    for (int a = 0; a < n; ++a) {
      for (int b = a + 1; b < n; ++b) {
        const double mi = mutual_information(j, a, b);
        const double h = entropy(marginal(j, {a})) + entropy(marginal(j, {b})) -
                         entropy(marginal(j, {a, b}));
        EXPECT_NEAR(mi, h, 1e-9);
        EXPECT_GE(mi, 0.0);
      }
    }
    const auto support = (j.probabilities().array() > 0).count();
    EXPECT_GE(entropy(j), 0.0);
    EXPECT_LE(entropy(j), std::log2(static_cast<double>(support)) + 1e-12);
    const auto other = quantum_joint(test_support::random_net(gen, {n, n, 3, false}));
    const double f = fidelity(j, other);
    EXPECT_EQ(f, fidelity(other, j));
    EXPECT_GE(f, 0.0);
    EXPECT_LE(f, 1.0 + 1e-12);
    EXPECT_NEAR(fidelity(j, j), 1.0, 1e-12);
  }
}

TEST(MetricsProperty, RootsOnlyHaveZeroMutualInformation) {
  std::mt19937_64 gen(62);
  for (int trial = 0; trial < 100; ++trial) {
    const auto net = test_support::random_net(gen, {2, 5, 0, true});
    const auto j = quantum_joint(net);
    for (int a = 0; a < net.size(); ++a) {
      for (int b = a + 1; b < net.size(); ++b) EXPECT_LT(mutual_information(j, a, b), 1e-9);
    }
  }
}

TEST(MetricsProperty, RankingIsDeterministic) {
  const Distribution d({0, 1, 2}, Eigen::VectorXd::Constant(8, 0.125));
  const auto a = cdf_over_sorted_outcomes(d);
  const auto b = cdf_over_sorted_outcomes(d);
  for (std::size_t k = 0; k < a.size(); ++k) {
    EXPECT_EQ(a[k].index, b[k].index);
    if (k) EXPECT_LT(d.display_key(a[k - 1].index), d.display_key(a[k].index));
  }
}
