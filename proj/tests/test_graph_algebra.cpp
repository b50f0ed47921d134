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

#include "clustersync/graph_algebra.hpp"
#include "clustersync/scenarios.hpp"
#include "oracles.hpp"

namespace cs = clustersync;
using cs::Edge;
using cs::EdgeList;
using cs::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

TEST(Incidence, OrientationAndShape) {
  const EdgeList edges{{0, 1}, {1, 2}, {0, 2}};
  const MatrixXd b = cs::oriented_incidence(3, edges);
  MatrixXd expected(3, 3);
  expected << -1, 0, -1,
               1, -1, 0,
               0, 1, 1;
  EXPECT_EQ(b, expected);
  // columns sum to zero, so 1^T B = 0
  EXPECT_EQ((VectorXd::Ones(3).transpose() * b).norm(), 0.0);
}

TEST(Incidence, RejectsBadEdges) {
  EXPECT_THROW(cs::oriented_incidence(3, EdgeList{{1, 0}}), cs::InputError);
  EXPECT_THROW(cs::oriented_incidence(3, EdgeList{{0, 1}, {0, 1}}), cs::InputError);
  EXPECT_THROW(cs::oriented_incidence(2, EdgeList{{0, 2}}), cs::InputError);
  EXPECT_THROW(cs::make_edge(2, 2), cs::InputError);
  EXPECT_EQ(cs::make_edge(4, 1), (Edge{1, 4}));
}

TEST(Incidence, LaplacianFactorization) {
  std::mt19937_64 rng(7);
  const MatrixXd a = oracle::random_connected(6, rng);
  const EdgeList e = cs::edge_order(a);
  const MatrixXd b = cs::oriented_incidence(6, e);
  VectorXd w(static_cast<Index>(e.size()));
  for (Index c = 0; c < w.size(); ++c) w(c) = a(e[c].source, e[c].sink);
  std::vector<Index> all{0, 1, 2, 3, 4, 5};
  EXPECT_LE((b * w.asDiagonal() * b.transpose() - oracle::induced_laplacian(a, all)).norm(),
            1e-12);
}

TEST(SpanningTree, BfsFromLowestNode) {
  const std::vector<Index> nodes{0, 1, 2, 3};
  const EdgeList cycle{{0, 1}, {0, 3}, {1, 2}, {2, 3}};
  EXPECT_EQ(cs::spanning_tree(nodes, cycle), (EdgeList{{0, 1}, {0, 3}, {1, 2}}));
  const std::vector<Index> tri{0, 1, 2};
  EXPECT_EQ(cs::spanning_tree(tri, EdgeList{{0, 1}, {0, 2}, {1, 2}}), (EdgeList{{0, 1}, {0, 2}}));
}

TEST(SpanningTree, DisconnectedClusterIsAnError) {
  const std::vector<Index> nodes{0, 1, 2};
  try {
    cs::spanning_tree(nodes, EdgeList{{0, 1}}, "cluster 2");
    FAIL();
  } catch (const cs::InputError& e) {
    EXPECT_STREQ(e.what(), "cluster 2 induces a disconnected subgraph");
  }
}

TEST(TIntra, ReconstructsAllIntraDifferences) {
  // x_all = T x_tree for every phase vector
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int trial = 0; trial < 20; ++trial) {
    const Index k = 3 + trial % 5;
    const MatrixXd a = oracle::random_connected(k, rng, 0.6);
    std::vector<Index> nodes(k);
    for (Index i = 0; i < k; ++i) nodes[i] = i;
    const EdgeList e = cs::edge_order(a);
    const EdgeList t = cs::spanning_tree(nodes, e);
    const MatrixXd b = cs::oriented_incidence(nodes, e);
    const MatrixXd bt = cs::oriented_incidence(nodes, t);
    const MatrixXd tm = cs::t_intra(b, bt);
    VectorXd th(k);
    for (Index i = 0; i < k; ++i) th(i) = u(rng);
    EXPECT_LE((b.transpose() * th - tm * (bt.transpose() * th)).norm(), 1e-10);
    // tree rows of T are the identity
    for (Index c = 0; c < static_cast<Index>(t.size()); ++c) {
      const auto pos = std::find(e.begin(), e.end(), t[c]) - e.begin();
      EXPECT_LE((tm.row(pos) - MatrixXd::Identity(t.size(), t.size()).row(c)).norm(), 1e-12);
    }
  }
}

TEST(SpanningStructure, DefaultInterEdgesOnTreeDemo) {
  const auto m = cs::scenarios::tree_demo9();
  const cs::SpanningStructure s(m.network(), m.partition());
  EXPECT_EQ(s.inter_edges(), (EdgeList{{2, 5}, {3, 6}}));  // (3,6), (4,7)
  EXPECT_EQ(s.intra_size(), 6);
  EXPECT_EQ(s.inter_size(), 2);
  EXPECT_EQ(s.cluster(0).tree, (EdgeList{{0, 1}, {0, 2}}));
  EXPECT_EQ(s.cluster(1).tree, (EdgeList{{3, 4}, {4, 5}}));
  EXPECT_EQ(s.cluster(2).tree, (EdgeList{{6, 7}, {6, 8}}));
  EXPECT_EQ(s.cluster(1).offset, 2);
}

TEST(SpanningStructure, LexicographicInterEdgeOnLadder) {
  const auto m = cs::scenarios::ladder6();
  const cs::SpanningStructure s(m.network(), m.partition());
  EXPECT_EQ(s.inter_edges(), (EdgeList{{0, 3}}));
  EXPECT_EQ(s.tree_edges().size(), 5u);
}

TEST(SpanningStructure, PathRowsReproduceEveryPairDifference) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-10, 10);
  for (const auto& m : {cs::scenarios::tree_demo9(), cs::scenarios::three_cluster_chain9(),
                        cs::scenarios::band_ring(4)}) {
    const cs::SpanningStructure s(m.network(), m.partition());
    VectorXd th(m.n);
    for (Index i = 0; i < m.n; ++i) th(i) = u(rng);
    const VectorXd x = s.coordinates(th);
    const VectorXd xi = x.head(s.intra_size()), xe = x.tail(s.inter_size());
    for (Index i = 0; i < m.n; ++i)
      for (Index j = 0; j < m.n; ++j)
        EXPECT_NEAR(cs::path_difference(i, j, s, xi, xe), th(j) - th(i), 1e-12);
  }
}

TEST(SpanningStructure, ExplicitTreeChoice) {
  const auto m = cs::scenarios::tree_demo9();
  cs::TreeChoice choice;
  choice.cluster_trees = {EdgeList{{0, 2}, {1, 2}}, EdgeList{}, EdgeList{}};
  choice.inter_edges = EdgeList{{3, 6}, {2, 5}};
  const cs::SpanningStructure s(m.network(), m.partition(), &choice);
  EXPECT_EQ(s.cluster(0).tree, (EdgeList{{0, 2}, {1, 2}}));
  EXPECT_EQ(s.inter_edges(), (EdgeList{{2, 5}, {3, 6}}));

  cs::TreeChoice bad;
  bad.inter_edges = EdgeList{{0, 1}, {3, 6}};  // intra edge
  EXPECT_THROW(cs::SpanningStructure(m.network(), m.partition(), &bad), cs::InputError);
  cs::TreeChoice cyclic;
  cyclic.cluster_trees = {EdgeList{{0, 1}, {0, 2}, {1, 2}}, EdgeList{}, EdgeList{}};
  EXPECT_THROW(cs::SpanningStructure(m.network(), m.partition(), &cyclic), cs::InputError);
}

TEST(SpanningStructure, DisconnectedQuotientIsAnError) {
  MatrixXd a = MatrixXd::Zero(4, 4);
  a(0, 1) = a(1, 0) = 1;
  a(2, 3) = a(3, 2) = 1;
  const cs::Network net(a, VectorXd::Ones(4));
  const cs::Partition part({{0, 1}, {2, 3}}, 4);
  EXPECT_THROW(cs::SpanningStructure(net, part), cs::InputError);
  // the per-cluster scaffolding alone does not need a connected network
  EXPECT_EQ(cs::build_cluster_blocks(net, part).size(), 2u);
}

TEST(TreePseudoinverse, IsRightInverseOfTreeTranspose) {
  std::mt19937_64 rng(3);
  const MatrixXd a = oracle::random_connected(7, rng);
  std::vector<Index> nodes{0, 1, 2, 3, 4, 5, 6};
  const MatrixXd bt = cs::oriented_incidence(nodes, cs::spanning_tree(nodes, cs::edge_order(a)));
  const MatrixXd p = cs::tree_pseudoinverse(bt);
  EXPECT_LE((bt.transpose() * p - MatrixXd::Identity(6, 6)).norm(), 1e-12);
}
