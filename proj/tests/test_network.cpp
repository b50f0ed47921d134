// Copyright 2026 The clustersync Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <random>

#include <gtest/gtest.h>

#include "clustersync/network.hpp"
#include "clustersync/scenarios.hpp"

namespace cs = clustersync;
using cs::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

cs::Network ladder(double alpha1, double alpha2, double beta, double w1 = 1, double w2 = 6) {
  auto m = cs::scenarios::ladder6();
  m.set_param("alpha1", alpha1);
  m.set_param("alpha2", alpha2);
  m.set_param("beta", beta);
  m.set_param("omega1", w1);
  m.set_param("omega2", w2);
  return m.network();
}

cs::Partition halves() { return cs::Partition({{0, 1, 2}, {3, 4, 5}}, 6); }

bool has_kind(const std::vector<cs::Violation>& v, cs::Violation::Kind k) {
  for (const auto& x : v)
    if (x.kind == k) return true;
  return false;
}

}  // namespace

TEST(Network, RejectsDimensionMismatch) {
  EXPECT_THROW(cs::Network(MatrixXd::Zero(3, 3), VectorXd::Ones(4)), cs::InputError);
  EXPECT_THROW(cs::Network(MatrixXd::Zero(3, 2), VectorXd::Ones(3)), cs::InputError);
}

TEST(Partition, ValidatesCoverAndDisjointness) {
  EXPECT_THROW(cs::Partition({{0, 1, 2}}, 3), cs::InputError);
  EXPECT_THROW(cs::Partition({{0, 1}, {}}, 2), cs::InputError);
  EXPECT_THROW(cs::Partition({{0, 1}, {1, 2}}, 3), cs::InputError);
  EXPECT_THROW(cs::Partition({{0}, {1}}, 3), cs::InputError);
  EXPECT_THROW(cs::Partition({{0}, {3}}, 3), cs::InputError);
  cs::Partition p({{2, 0}, {1}}, 3);
  EXPECT_EQ(p.cluster(0), (std::vector<Index>{0, 2}));
  EXPECT_EQ(p.cluster_of(1), 1);
  EXPECT_EQ(p.max_intra_size(), 1);
}

TEST(Validate, CleanLadderHasNoViolations) {
  EXPECT_TRUE(cs::validate_network(ladder(1, 1, 0.1)).empty());
}

TEST(Validate, ReportsAsymmetryWithPosition) {
  MatrixXd a = ladder(1, 1, 0.1).adjacency();
  a(1, 2) = 0.5;
  const auto v = cs::validate_network(cs::Network(a, VectorXd::Ones(6)));
  ASSERT_TRUE(has_kind(v, cs::Violation::Kind::kAsymmetry));
  bool found = false;
  for (const auto& x : v) found = found || x.message == "asymmetry at (2,3)";
  EXPECT_TRUE(found);
  EXPECT_TRUE(cs::validate_network(cs::Network(a, VectorXd::Ones(6), true)).empty());
}

TEST(Validate, ReportsSelfLoopNegativeWeightAndFrequency) {
  MatrixXd a = ladder(1, 1, 0.1).adjacency();
  a(0, 0) = 1.0;
  a(2, 5) = a(5, 2) = -0.1;
  VectorXd w = VectorXd::Ones(6);
  w(4) = 0.0;
  const auto v = cs::validate_network(cs::Network(a, w));
  EXPECT_TRUE(has_kind(v, cs::Violation::Kind::kSelfLoop));
  EXPECT_TRUE(has_kind(v, cs::Violation::Kind::kNegativeWeight));
  EXPECT_TRUE(has_kind(v, cs::Violation::Kind::kNonpositiveFrequency));
}

TEST(Validate, ReportsDisconnectedNetworkAndTooSmall) {
  MatrixXd a = MatrixXd::Zero(4, 4);
  a(0, 1) = a(1, 0) = 1;
  a(2, 3) = a(3, 2) = 1;
  EXPECT_TRUE(has_kind(cs::validate_network(cs::Network(a, VectorXd::Ones(4))),
                       cs::Violation::Kind::kDisconnected));
  EXPECT_TRUE(has_kind(cs::validate_network(cs::Network(MatrixXd::Zero(1, 1), VectorXd::Ones(1))),
                       cs::Violation::Kind::kTooSmall));
}

TEST(FrequencyCheck, EqualWithinClusters) {
  EXPECT_TRUE(cs::check_a2(ladder(1, 1, 0.1), halves()));
  cs::Network net(ladder(1, 1, 0.1).adjacency(),
                  (VectorXd(6) << 1, 1, 1.5, 6, 6, 6).finished());
  EXPECT_FALSE(cs::check_a2(net, halves()));
  EXPECT_THROW(cs::check_a2(net, cs::Partition({{0}, {1}}, 2)), cs::InputError);
}

TEST(EquitableCheck, LadderIsEquitable) {
  const auto r = cs::check_a3(ladder(1, 2, 0.7), halves());
  EXPECT_TRUE(r.ok);
  EXPECT_EQ(r.worst_violation, 0.0);
}

TEST(EquitableCheck, DetectsUnevenRowSums) {
  MatrixXd a = ladder(1, 1, 1).adjacency();
  a(0, 4) = a(4, 0) = 0.5;  // node 1 now has 1.5 into cluster 2
  const auto r = cs::check_a3(cs::Network(a, VectorXd::Ones(6)), halves());
  EXPECT_FALSE(r.ok);
  EXPECT_NEAR(r.worst_violation, 0.5, 1e-15);
}

TEST(EquitableCheck, RandomWeightsOnSymmetryFreeNetwork) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> w(0.05, 3.0);
  auto m = cs::scenarios::equitable_no_symmetry6();
  for (int trial = 0; trial < 100; ++trial) {
    for (const char* p : {"alpha1", "alpha2", "alpha3", "alpha4", "beta1", "beta2"})
      m.set_param(p, w(rng));
    const auto net = m.network();
    const auto part = m.partition();
    ASSERT_TRUE(cs::check_a2(net, part));
    ASSERT_TRUE(cs::check_a3(net, part).ok) << "trial " << trial;
  }
}

TEST(QuotientWeight, LadderRungs) {
  // one rung of weight beta per node
  const auto net = ladder(1, 1, 1);
  for (Index i = 0; i < 3; ++i) EXPECT_DOUBLE_EQ(cs::quotient_weight(net, halves(), i, 1), 1.0);
  for (Index i = 3; i < 6; ++i) EXPECT_DOUBLE_EQ(cs::quotient_weight(net, halves(), i, 0), 1.0);
}

TEST(NoSubmanifold, TwoClustersReduceToFrequencyGap) {
  const auto pm = cs::check_no_submanifold(ladder(1, 1, 5, 1, 6), halves());
  ASSERT_EQ(pm.size(), 1u);
  EXPECT_DOUBLE_EQ(pm[0].margin, 5.0);
  EXPECT_TRUE(pm[0].passes);
  EXPECT_FALSE(cs::check_no_submanifold(ladder(1, 1, 5, 2, 2), halves())[0].passes);
}

TEST(NoSubmanifold, ThreeClusterChainIsInconclusive) {
  const auto m = cs::scenarios::three_cluster_chain9();
  const auto pm = cs::check_no_submanifold(m.network(), m.partition());
  ASSERT_EQ(pm.size(), 3u);
  // |4 - 2| - 2 * max(q(1,3) = 0, q(2,3) = 5)
  EXPECT_DOUBLE_EQ(pm[0].margin, -8.0);
  EXPECT_FALSE(pm[0].passes);
  // |4 - 6| - 2 * max(q(1,2) = 3, q(3,2) = 5)
  EXPECT_DOUBLE_EQ(pm[1].margin, -8.0);
  // |2 - 6| - 2 * max(q(2,1) = 3, q(3,1) = 0)
  EXPECT_DOUBLE_EQ(pm[2].margin, -2.0);
}

TEST(RunChecks, CollectsEverything) {
  const auto m = cs::scenarios::tree_demo9();
  const auto r = cs::run_checks(m.network(), m.partition());
  EXPECT_TRUE(r.violations.empty());
  EXPECT_TRUE(r.a2_ok);
  EXPECT_FALSE(r.a3_ok);
  EXPECT_FALSE(r.ok());
  EXPECT_EQ(r.per_pair_margins.size(), 3u);
}

TEST(RunChecks, DisconnectedClusterIsReported) {
  MatrixXd a = ladder(1, 1, 1).adjacency();
  a(0, 1) = a(1, 0) = 0;  // cluster 1 = {1} + {2,3}
  const cs::Network net(a, (VectorXd(6) << 1, 1, 1, 6, 6, 6).finished());
  const auto r = cs::run_checks(net, halves());
  EXPECT_EQ(r.disconnected_clusters, (std::vector<Index>{0}));
  EXPECT_FALSE(r.ok());
  EXPECT_THROW(cs::require_invariant_manifold(net, halves()), cs::InputError);
}

TEST(RequireInvariant, ThrowsForEachFailure) {
  EXPECT_NO_THROW(cs::require_invariant_manifold(ladder(1, 1, 1), halves()));
  MatrixXd a = ladder(1, 1, 1).adjacency();
  a(0, 1) = 2;
  EXPECT_THROW(cs::require_invariant_manifold(cs::Network(a, VectorXd::Ones(6)), halves()),
               cs::InputError);
  cs::Network uneven(ladder(1, 1, 1).adjacency(),
                     (VectorXd(6) << 1, 2, 1, 6, 6, 6).finished());
  EXPECT_THROW(cs::require_invariant_manifold(uneven, halves()), cs::InputError);
}

TEST(RunChecks, ToleranceControlsEquitableVerdict) {
  MatrixXd a = ladder(1, 1, 1).adjacency();
  a(0, 3) = a(3, 0) = 1 + 1e-7;
  const cs::Network net(a, (VectorXd(6) << 1, 1, 1, 6, 6, 6).finished());
  EXPECT_FALSE(cs::run_checks(net, halves()).a3_ok);
  cs::CheckTolerances loose;
  loose.weights = 1e-6;
  EXPECT_TRUE(cs::run_checks(net, halves(), loose).a3_ok);
}
