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

// Incidence matrices, spanning trees and the tree coordinates used to
// describe phase differences.
//
// Coordinate layout, fixed for every Jacobian in the library:
//   x = [x_intra^(1); ...; x_intra^(m); x_inter]
// where x_intra^(k) holds theta_j - theta_i for the tree edges (i, j), i < j,
// of cluster k in lexicographic order, and x_inter holds the m-1 edges that
// join the cluster trees, also in lexicographic order.

#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "clustersync/common.hpp"
#include "clustersync/network.hpp"

namespace clustersync {

/// Undirected edge stored with source < sink.
struct Edge {
  Index source = 0;
  Index sink = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

inline Edge make_edge(Index a, Index b) {
  if (a == b) throw InputError("edge endpoints must differ");
  return a < b ? Edge{a, b} : Edge{b, a};
}

using EdgeList = std::vector<Edge>;

inline std::string to_string(const Edge& e) {
  return "(" + std::to_string(e.source + 1) + "," + std::to_string(e.sink + 1) + ")";
}

/// All node pairs i < j with a nonzero weight in either direction, in
/// lexicographic order.
inline EdgeList edge_order(const MatrixXd& adjacency) {
  EdgeList out;
  for (Index i = 0; i < adjacency.rows(); ++i)
    for (Index j = i + 1; j < adjacency.cols(); ++j)
      if (adjacency(i, j) != 0.0 || adjacency(j, i) != 0.0) out.push_back({i, j});
  return out;
}

/// Oriented incidence matrix with rows following `nodes` (global ids) and one
/// column per edge: -1 at the source row, +1 at the sink row.
inline MatrixXd oriented_incidence(std::span<const Index> nodes,
                                   std::span<const Edge> edges) {
  std::map<Index, Index> row;
  for (Index r = 0; r < static_cast<Index>(nodes.size()); ++r) row[nodes[r]] = r;
  std::set<Edge> seen;
  MatrixXd b = MatrixXd::Zero(static_cast<Index>(nodes.size()),
                              static_cast<Index>(edges.size()));
  for (Index c = 0; c < static_cast<Index>(edges.size()); ++c) {
    const Edge& e = edges[c];
    if (e.source >= e.sink)
      throw InputError("edge " + to_string(e) + " is not oriented low-to-high");
    if (!seen.insert(e).second) throw InputError("duplicate edge " + to_string(e));
    auto s = row.find(e.source), t = row.find(e.sink);
    if (s == row.end() || t == row.end())
      throw InputError("edge " + to_string(e) + " references an unknown node");
    b(s->second, c) = -1.0;
    b(t->second, c) = 1.0;
  }
  return b;
}

/// Incidence over nodes 0..node_count-1.
inline MatrixXd oriented_incidence(Index node_count, std::span<const Edge> edges) {
  std::vector<Index> nodes(node_count);
  for (Index i = 0; i < node_count; ++i) nodes[i] = i;
  return oriented_incidence(nodes, edges);
}

/// BFS spanning tree rooted at the lowest-index node, neighbours visited in
/// ascending order. Returned in lexicographic order.
inline EdgeList spanning_tree(std::span<const Index> cluster_nodes,
                              std::span<const Edge> cluster_edges,
                              const std::string& label = "cluster") {
  if (cluster_nodes.empty()) return {};
  std::map<Index, std::set<Index>> adj;
  for (Index v : cluster_nodes) adj[v];
  for (const Edge& e : cluster_edges) {
    adj[e.source].insert(e.sink);
    adj[e.sink].insert(e.source);
  }
  const Index root = *std::min_element(cluster_nodes.begin(), cluster_nodes.end());
  std::set<Index> seen{root};
  std::queue<Index> frontier;
  frontier.push(root);
  EdgeList tree;
  while (!frontier.empty()) {
    const Index u = frontier.front();
    frontier.pop();
    for (Index w : adj[u]) {
      if (seen.insert(w).second) {
        tree.push_back(make_edge(u, w));
        frontier.push(w);
      }
    }
  }
  if (seen.size() != cluster_nodes.size())
    throw InputError(label + " induces a disconnected subgraph");
  std::sort(tree.begin(), tree.end());
  return tree;
}

/// T = B_k^T (B_span,k^T)^+, with the pseudoinverse taken through the Gram
/// matrix of the tree incidence.
inline MatrixXd tree_pseudoinverse(const MatrixXd& tree_incidence) {
  if (tree_incidence.cols() == 0) return MatrixXd::Zero(tree_incidence.rows(), 0);
  const MatrixXd gram = tree_incidence.transpose() * tree_incidence;
  Eigen::LLT<MatrixXd> llt(gram);
  if (llt.info() != Eigen::Success)
    throw InvariantError("tree incidence Gram matrix is singular");
  return tree_incidence * llt.solve(MatrixXd::Identity(gram.rows(), gram.cols()));
}

inline MatrixXd t_intra(const MatrixXd& incidence, const MatrixXd& tree_incidence) {
  return incidence.transpose() * tree_pseudoinverse(tree_incidence);
}

/// Per-cluster scaffolding.
struct ClusterBlock {
  std::vector<Index> nodes;     ///< ascending global ids
  EdgeList edges;               ///< E_k, lexicographic
  VectorXd weights;             ///< a_ij for each edge of E_k
  EdgeList tree;                ///< E_span,k, lexicographic
  MatrixXd incidence;           ///< B_k
  MatrixXd tree_incidence;      ///< B_span,k
  MatrixXd tree_pinv;           ///< (B_span,k^T)^+
  MatrixXd t_intra;             ///< T_intra,k
  Index offset = 0;             ///< first row of this block in x_intra

  Index intra_size() const { return static_cast<Index>(tree.size()); }
};

/// Optional explicit tree selection. Empty members fall back to the BFS
/// policy.
struct TreeChoice {
  std::vector<EdgeList> cluster_trees;
  std::optional<EdgeList> inter_edges;
};

namespace detail {

inline bool is_spanning_tree(std::span<const Index> nodes, const EdgeList& tree) {
  if (tree.size() + 1 != nodes.size()) return false;
  std::set<Index> in(nodes.begin(), nodes.end());
  std::map<Index, Index> parent;
  for (Index v : nodes) parent[v] = v;
  auto find = [&](Index v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (const Edge& e : tree) {
    if (!in.count(e.source) || !in.count(e.sink)) return false;
    Index a = find(e.source), b = find(e.sink);
    if (a == b) return false;
    parent[a] = b;
  }
  return true;
}

}  // namespace detail

inline ClusterBlock make_cluster_block(const Network& net, const Partition& part,
                                       Index k, const EdgeList* tree_override) {
  ClusterBlock b;
  b.nodes = part.cluster(k);
  const std::set<Index> members(b.nodes.begin(), b.nodes.end());
  for (const Edge& e : edge_order(net.adjacency()))
    if (members.count(e.source) && members.count(e.sink)) b.edges.push_back(e);
  b.weights.resize(static_cast<Index>(b.edges.size()));
  for (Index c = 0; c < static_cast<Index>(b.edges.size()); ++c)
    b.weights(c) = net.weight(b.edges[c].source, b.edges[c].sink);
  const std::string label = "cluster " + std::to_string(k + 1);
  if (tree_override != nullptr && !tree_override->empty()) {
    EdgeList t = *tree_override;
    std::sort(t.begin(), t.end());
    for (const Edge& e : t)
      if (!std::binary_search(b.edges.begin(), b.edges.end(), e))
        throw InputError(label + ": tree edge " + to_string(e) + " is not in the cluster");
    if (!detail::is_spanning_tree(b.nodes, t))
      throw InputError(label + ": supplied edges do not form a spanning tree");
    b.tree = std::move(t);
  } else {
    b.tree = spanning_tree(b.nodes, b.edges, label);
  }
  b.incidence = oriented_incidence(b.nodes, b.edges);
  b.tree_incidence = oriented_incidence(b.nodes, b.tree);
  b.tree_pinv = tree_pseudoinverse(b.tree_incidence);
  b.t_intra = b.incidence.transpose() * b.tree_pinv;
  return b;
}

/// Cluster blocks only; needs connected clusters but not a connected network.
inline std::vector<ClusterBlock> build_cluster_blocks(const Network& net,
                                                      const Partition& part,
                                                      const TreeChoice* choice = nullptr) {
  require_compatible(net, part);
  if (choice != nullptr && !choice->cluster_trees.empty() &&
      static_cast<Index>(choice->cluster_trees.size()) != part.cluster_count())
    throw InputError("tree choice must list one tree per cluster");
  std::vector<ClusterBlock> blocks;
  Index offset = 0;
  for (Index k = 0; k < part.cluster_count(); ++k) {
    const EdgeList* t = (choice != nullptr && !choice->cluster_trees.empty())
                            ? &choice->cluster_trees[k]
                            : nullptr;
    blocks.push_back(make_cluster_block(net, part, k, t));
    blocks.back().offset = offset;
    offset += blocks.back().intra_size();
  }
  return blocks;
}

/// Full spanning structure: cluster trees joined by m-1 inter-cluster edges
/// into a spanning tree of the whole network.
class SpanningStructure {
 public:
  SpanningStructure(const Network& net, const Partition& part,
                    const TreeChoice* choice = nullptr)
      : n_(net.size()), m_(part.cluster_count()),
        clusters_(build_cluster_blocks(net, part, choice)) {
    edges_ = edge_order(net.adjacency());
    incidence_ = oriented_incidence(n_, edges_);
    if (choice != nullptr && choice->inter_edges) {
      inter_ = *choice->inter_edges;
      std::sort(inter_.begin(), inter_.end());
      for (const Edge& e : inter_) {
        if (!std::binary_search(edges_.begin(), edges_.end(), e) ||
            part.cluster_of(e.source) == part.cluster_of(e.sink))
          throw InputError("inter-cluster edge " + to_string(e) +
                           " is not an edge between two clusters");
      }
    } else {
      inter_ = select_inter_edges(part);
    }
    for (const auto& b : clusters_) tree_.insert(tree_.end(), b.tree.begin(), b.tree.end());
    tree_.insert(tree_.end(), inter_.begin(), inter_.end());
    std::vector<Index> all(n_);
    for (Index i = 0; i < n_; ++i) all[i] = i;
    if (static_cast<Index>(inter_.size()) != m_ - 1 ||
        !detail::is_spanning_tree(all, tree_))
      throw InputError("inter-cluster edges do not join the clusters into a spanning tree");
    tree_incidence_ = oriented_incidence(n_, tree_);
    tree_adj_.assign(n_, {});
    for (Index c = 0; c < static_cast<Index>(tree_.size()); ++c) {
      tree_adj_[tree_[c].source].push_back({tree_[c].sink, c});
      tree_adj_[tree_[c].sink].push_back({tree_[c].source, c});
    }
  }

  Index node_count() const { return n_; }
  Index cluster_count() const { return m_; }
  Index intra_size() const { return n_ - m_; }
  Index inter_size() const { return m_ - 1; }
  const std::vector<ClusterBlock>& clusters() const { return clusters_; }
  const ClusterBlock& cluster(Index k) const { return clusters_[k]; }
  const EdgeList& edges() const { return edges_; }
  const EdgeList& inter_edges() const { return inter_; }
  /// Tree edges in coordinate order (intra blocks, then inter).
  const EdgeList& tree_edges() const { return tree_; }
  /// B over all edges of the network.
  const MatrixXd& incidence() const { return incidence_; }
  /// Incidence of the spanning tree in coordinate order; x = B_T^T theta.
  const MatrixXd& tree_incidence() const { return tree_incidence_; }

  /// Tree coordinates (unwrapped differences) of a phase vector.
  VectorXd coordinates(const VectorXd& theta) const {
    return tree_incidence_.transpose() * theta;
  }

  /// Row r with x_ij = r . [x_intra; x_inter] along the unique tree path.
  Eigen::RowVectorXd path_row(Index i, Index j) const {
    Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(n_ - 1);
    if (i == j) return row;
    std::vector<Index> via_edge(n_, -1), prev(n_, -1);
    std::vector<char> seen(n_, 0);
    std::queue<Index> q;
    q.push(i);
    seen[i] = 1;
    while (!q.empty() && !seen[j]) {
      const Index u = q.front();
      q.pop();
      for (auto [w, c] : tree_adj_[u]) {
        if (seen[w]) continue;
        seen[w] = 1;
        prev[w] = u;
        via_edge[w] = c;
        q.push(w);
      }
    }
    for (Index v = j; v != i; v = prev[v]) {
      const Index p = prev[v];
      // step p -> v contributes +x_pv if p < v, else -x_vp
      row(via_edge[v]) += (p < v) ? 1.0 : -1.0;
    }
    return row;
  }

 private:
  EdgeList select_inter_edges(const Partition& part) const {
    // smallest edge for every connected cluster pair
    std::map<std::pair<Index, Index>, Edge> best;
    for (const Edge& e : edges_) {
      Index a = part.cluster_of(e.source), b = part.cluster_of(e.sink);
      if (a == b) continue;
      auto key = std::minmax(a, b);
      auto it = best.find(key);
      if (it == best.end() || e < it->second) best[key] = e;
    }
    std::vector<std::vector<Index>> qadj(m_);
    for (const auto& [key, e] : best) {
      qadj[key.first].push_back(key.second);
      qadj[key.second].push_back(key.first);
    }
    for (auto& nb : qadj) std::sort(nb.begin(), nb.end());
    EdgeList out;
    std::vector<char> seen(m_, 0);
    std::queue<Index> q;
    q.push(0);
    seen[0] = 1;
    while (!q.empty()) {
      const Index u = q.front();
      q.pop();
      for (Index w : qadj[u]) {
        if (seen[w]) continue;
        seen[w] = 1;
        out.push_back(best.at(std::minmax(u, w)));
        q.push(w);
      }
    }
    if (static_cast<Index>(out.size()) != m_ - 1)
      throw InputError("the cluster quotient graph is disconnected");
    std::sort(out.begin(), out.end());
    return out;
  }

  Index n_;
  Index m_;
  std::vector<ClusterBlock> clusters_;
  EdgeList edges_;
  EdgeList inter_;
  EdgeList tree_;
  MatrixXd incidence_;
  MatrixXd tree_incidence_;
  std::vector<std::vector<std::pair<Index, Index>>> tree_adj_;
};

/// Signed sum of tree coordinates along the tree path from i to j; equals
/// theta_j - theta_i when the coordinates come from theta.
inline double path_difference(Index i, Index j, const SpanningStructure& s,
                              const VectorXd& x_intra, const VectorXd& x_inter) {
  VectorXd x(x_intra.size() + x_inter.size());
  x << x_intra, x_inter;
  return s.path_row(i, j).dot(x);
}

}  // namespace clustersync
