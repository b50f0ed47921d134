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

// Bundled benchmark networks. Several of them are reconstructions from a
// topological description (cluster sizes, weight pattern, frequencies); each
// description says what was assumed, and all of them except the tree demo
// satisfy the invariance conditions.

#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "clustersync/model.hpp"

namespace clustersync::scenarios {

namespace detail {

inline ModelEdge edge(Index i, Index j, Value w) { return {i - 1, j - 1, std::move(w)}; }

}  // namespace detail

/// Two 3-node path clusters {1,2,3} (weight alpha1) and {4,5,6} (weight
/// alpha2) joined by the rungs 1-4, 2-5, 3-6 (weight beta). Every node has
/// inter-cluster degree beta, so a_bar = 2 beta.
inline NetworkModel ladder6() {
  using detail::edge;
  NetworkModel m;
  m.description =
      "Two three-node path clusters joined by a ladder of inter-cluster edges. "
      "Reconstructed: path clusters and a perfect-matching ladder give "
      "1/lambda_max(X_k) = 2 alpha_k, gamma = 4 beta and a_bar = 2 beta.";
  m.n = 6;
  m.params = {{"alpha1", 1.0}, {"alpha2", 1.0}, {"beta", 0.1}, {"omega1", 1.0}, {"omega2", 6.0}};
  m.edges = {edge(1, 2, "alpha1"), edge(2, 3, "alpha1"), edge(4, 5, "alpha2"),
             edge(5, 6, "alpha2"), edge(1, 4, "beta"),   edge(2, 5, "beta"),
             edge(3, 6, "beta")};
  m.omega = {"omega1", "omega1", "omega1", "omega2", "omega2", "omega2"};
  m.clusters = {{0, 1, 2}, {3, 4, 5}};
  return m;
}

/// Six nodes, two path clusters with four different intra weights and two
/// families of inter-cluster edges. The partition is external equitable
/// without any graph symmetry mapping one cluster onto itself.
inline NetworkModel equitable_no_symmetry6() {
  using detail::edge;
  NetworkModel m;
  m.description =
      "Equitable two-cluster network without symmetry. Reconstructed: every "
      "node has inter-cluster degree beta1 + beta2 while intra weights differ.";
  m.n = 6;
  m.params = {{"alpha1", 1.0}, {"alpha2", 2.0}, {"alpha3", 1.5}, {"alpha4", 0.5},
              {"beta1", 0.3},  {"beta2", 0.7},  {"omega1", 1.0}, {"omega2", 4.0}};
  m.edges = {edge(1, 2, "alpha1"), edge(2, 3, "alpha2"), edge(4, 5, "alpha3"),
             edge(5, 6, "alpha4"), edge(1, 4, "beta1"),  edge(2, 5, "beta1"),
             edge(3, 6, "beta1"),  edge(1, 5, "beta2"),  edge(2, 6, "beta2"),
             edge(3, 4, "beta2")};
  m.omega = {"omega1", "omega1", "omega1", "omega2", "omega2", "omega2"};
  m.clusters = {{0, 1, 2}, {3, 4, 5}};
  return m;
}

/// Three path clusters in a chain with ladder couplings 3 (clusters 1-2)
/// and 5 (clusters 2-3), frequencies 4, 2, 6. Clusters 1 and 2 fail the
/// no-submanifold margin and can lock into a rotating pair.
inline NetworkModel three_cluster_chain9() {
  using detail::edge;
  NetworkModel m;
  m.description =
      "Three-cluster chain with a locking sub-pattern. Reconstructed: unit "
      "path clusters, ladders of weight 3 and 5 between consecutive clusters.";
  m.n = 9;
  m.params = {{"alpha", 1.0}, {"beta12", 3.0}, {"beta23", 5.0},
              {"omega1", 4.0}, {"omega2", 2.0}, {"omega3", 6.0}};
  m.edges = {edge(1, 2, "alpha"),  edge(2, 3, "alpha"),  edge(4, 5, "alpha"),
             edge(5, 6, "alpha"),  edge(7, 8, "alpha"),  edge(8, 9, "alpha"),
             edge(1, 4, "beta12"), edge(2, 5, "beta12"), edge(3, 6, "beta12"),
             edge(4, 7, "beta23"), edge(5, 8, "beta23"), edge(6, 9, "beta23")};
  m.omega = {"omega1", "omega1", "omega1", "omega2", "omega2",
             "omega2", "omega3", "omega3", "omega3"};
  m.clusters = {{0, 1, 2}, {3, 4, 5}, {6, 7, 8}};
  return m;
}

/// Nine nodes in three clusters (triangle, path, star) joined by the two
/// edges (3,6) and (4,7). Used to demonstrate the spanning-tree coordinates;
/// it is not equitable.
inline NetworkModel tree_demo9() {
  using detail::edge;
  NetworkModel m;
  m.description =
      "Spanning-tree coordinate demo: triangle, path and star clusters joined "
      "by edges (3,6) and (4,7). Does not satisfy the equitable condition.";
  m.n = 9;
  m.params = {{"w", 1.0}};
  m.edges = {edge(1, 2, "w"), edge(1, 3, "w"), edge(2, 3, "w"), edge(4, 5, "w"),
             edge(5, 6, "w"), edge(7, 8, "w"), edge(7, 9, "w"), edge(3, 6, "w"),
             edge(4, 7, "w")};
  m.omega = {1.0, 1.0, 1.0, 2.0, 2.0, 2.0, 3.0, 3.0, 3.0};
  m.clusters = {{0, 1, 2}, {3, 4, 5}, {6, 7, 8}};
  return m;
}

/// 2N nodes on a ring, unit coupling to every node within ring distance 2;
/// odd nodes (frequency omega1) and even nodes (omega2) form the clusters.
inline NetworkModel band_ring(Index half = 5) {
  using detail::edge;
  NetworkModel m;
  m.description =
      "Band ring: node i coupled to i+1 and i+2 (cyclically); odd and even "
      "nodes form two clusters. Admits a rotating-pattern invariant set.";
  const Index n = 2 * half;
  m.n = n;
  m.params = {{"w", 1.0}, {"omega1", 1.0}, {"omega2", 3.0}};
  std::vector<std::pair<Index, Index>> pairs;
  for (Index i = 0; i < n; ++i)
    for (Index d = 1; d <= 2; ++d) {
      Index j = (i + d) % n;
      pairs.push_back(std::minmax(i, j));
    }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  for (auto [i, j] : pairs) m.edges.push_back({i, j, "w"});
  for (Index i = 0; i < n; ++i) m.omega.push_back(i % 2 == 0 ? "omega1" : "omega2");
  m.clusters.resize(2);
  for (Index i = 0; i < n; ++i) m.clusters[i % 2].push_back(i);
  return m;
}

/// Ten identical oscillators in five two-node clusters arranged as a ladder
/// ring. Provided only as a simulation scenario.
inline NetworkModel identical_ring10() {
  NetworkModel m;
  m.description =
      "Identical-frequency ladder ring: five two-node clusters, each node "
      "coupled to its partner and to the matching node of both neighbouring "
      "clusters. Reconstructed.";
  m.n = 10;
  m.params = {{"w", 1.0}, {"omega", 3.0}};
  for (Index k = 0; k < 5; ++k) {
    const Index next = (k + 1) % 5;
    m.edges.push_back({2 * k, 2 * k + 1, "w"});
    m.edges.push_back({std::min(2 * k, 2 * next), std::max(2 * k, 2 * next), "w"});
    m.edges.push_back(
        {std::min(2 * k + 1, 2 * next + 1), std::max(2 * k + 1, 2 * next + 1), "w"});
  }
  m.omega.assign(10, std::string("omega"));
  for (Index k = 0; k < 5; ++k) m.clusters.push_back({2 * k, 2 * k + 1});
  return m;
}

struct Named {
  std::string file;
  NetworkModel model;
};

inline std::vector<Named> all() {
  return {{"ladder6_two_clusters.yaml", ladder6()},
          {"equitable_no_symmetry6.yaml", equitable_no_symmetry6()},
          {"three_cluster_chain9.yaml", three_cluster_chain9()},
          {"tree_demo9.yaml", tree_demo9()},
          {"band_ring10.yaml", band_ring(5)},
          {"identical_ring10.yaml", identical_ring10()}};
}

}  // namespace clustersync::scenarios
