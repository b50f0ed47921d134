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

// Networks of Kuramoto oscillators, cluster partitions, and the structural
// conditions under which the cluster synchronization manifold is invariant:
// equal natural frequencies inside every cluster, and equal total coupling
// from every node of a cluster into each other cluster (an external
// equitable partition).

#pragma once

#include <algorithm>
#include <limits>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "clustersync/common.hpp"

namespace clustersync {

/// Weighted oscillator network. Node indices are 0-based in the API and
/// 1-based in files and printed diagnostics.
class Network {
 public:
  Network(MatrixXd adjacency, VectorXd omega, bool allow_asymmetric = false)
      : adjacency_(std::move(adjacency)),
        omega_(std::move(omega)),
        allow_asymmetric_(allow_asymmetric) {
    if (adjacency_.rows() != adjacency_.cols())
      throw InputError("adjacency matrix must be square");
    if (adjacency_.rows() != omega_.size())
      throw InputError("omega has " + std::to_string(omega_.size()) +
                       " entries but the network has " +
                       std::to_string(adjacency_.rows()) + " nodes");
    if (adjacency_.rows() < 1) throw InputError("network has no nodes");
  }

  Index size() const { return adjacency_.rows(); }
  const MatrixXd& adjacency() const { return adjacency_; }
  double weight(Index i, Index j) const { return adjacency_(i, j); }
  const VectorXd& omega() const { return omega_; }
  bool allow_asymmetric() const { return allow_asymmetric_; }
  bool is_symmetric() const { return adjacency_ == adjacency_.transpose(); }

  /// Default weight tolerance 1e-9 * (1 + max |a_ij|).
  double default_weight_tolerance() const {
    return 1e-9 * (1.0 + adjacency_.cwiseAbs().maxCoeff());
  }

 private:
  MatrixXd adjacency_;
  VectorXd omega_;
  bool allow_asymmetric_;
};

/// Ordered list of m >= 2 disjoint, nonempty clusters covering 0..n-1.
/// Nodes inside each cluster are kept in ascending order.
class Partition {
 public:
  Partition(std::vector<std::vector<Index>> clusters, Index node_count)
      : clusters_(std::move(clusters)), cluster_of_(node_count, -1) {
    if (clusters_.size() < 2)
      throw InputError("a partition needs at least two clusters");
    for (std::size_t k = 0; k < clusters_.size(); ++k) {
      auto& c = clusters_[k];
      if (c.empty())
        throw InputError("cluster " + std::to_string(k + 1) + " is empty");
      std::sort(c.begin(), c.end());
      for (Index v : c) {
        if (v < 0 || v >= node_count)
          throw InputError("cluster " + std::to_string(k + 1) +
                           " references node " + std::to_string(v + 1) +
                           " outside 1.." + std::to_string(node_count));
        if (cluster_of_[v] >= 0)
          throw InputError("node " + std::to_string(v + 1) +
                           " appears in more than one cluster");
        cluster_of_[v] = static_cast<Index>(k);
      }
    }
    for (Index v = 0; v < node_count; ++v)
      if (cluster_of_[v] < 0)
        throw InputError("node " + std::to_string(v + 1) +
                         " is not assigned to any cluster");
  }

  Index cluster_count() const { return static_cast<Index>(clusters_.size()); }
  Index node_count() const { return static_cast<Index>(cluster_of_.size()); }
  const std::vector<Index>& cluster(Index k) const { return clusters_[k]; }
  const std::vector<std::vector<Index>>& clusters() const { return clusters_; }
  Index cluster_of(Index node) const { return cluster_of_[node]; }
  /// n_intra,k = |P_k| - 1.
  Index intra_size(Index k) const { return cluster(k).size() - 1; }
  Index max_intra_size() const {
    Index best = 0;
    for (Index k = 0; k < cluster_count(); ++k)
      best = std::max(best, intra_size(k));
    return best;
  }

 private:
  std::vector<std::vector<Index>> clusters_;
  std::vector<Index> cluster_of_;
};

struct Violation {
  enum class Kind {
    kTooSmall,
    kNegativeWeight,
    kAsymmetry,
    kSelfLoop,
    kNonpositiveFrequency,
    kDisconnected,
  };
  Kind kind;
  Index i = -1;
  Index j = -1;
  std::string message;
};

namespace detail {

inline bool connected_subset(const MatrixXd& a, const std::vector<Index>& nodes) {
  if (nodes.size() <= 1) return true;
  std::vector<char> in_set(a.rows(), 0), seen(a.rows(), 0);
  for (Index v : nodes) in_set[v] = 1;
  std::queue<Index> frontier;
  frontier.push(nodes.front());
  seen[nodes.front()] = 1;
  std::size_t reached = 1;
  while (!frontier.empty()) {
    Index u = frontier.front();
    frontier.pop();
    for (Index w = 0; w < a.rows(); ++w) {
      if (!in_set[w] || seen[w]) continue;
      if (a(u, w) != 0.0 || a(w, u) != 0.0) {
        seen[w] = 1;
        ++reached;
        frontier.push(w);
      }
    }
  }
  return reached == nodes.size();
}

}  // namespace detail

/// Lists every structural problem of the network; empty when the network
/// is usable. Never throws.
inline std::vector<Violation> validate_network(const Network& net) {
  using K = Violation::Kind;
  std::vector<Violation> out;
  const Index n = net.size();
  const auto& a = net.adjacency();
  auto at = [](Index i, Index j) {
    return "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
  };
  if (n < 2)
    out.push_back({K::kTooSmall, -1, -1, "network needs at least 2 nodes"});
  for (Index i = 0; i < n; ++i) {
    if (a(i, i) != 0.0)
      out.push_back({K::kSelfLoop, i, i,
                     "self-loop at " + std::to_string(i + 1)});
    if (!(net.omega()(i) > 0.0))
      out.push_back({K::kNonpositiveFrequency, i, -1,
                     "natural frequency of node " + std::to_string(i + 1) +
                         " is not positive"});
    for (Index j = 0; j < n; ++j) {
      if (a(i, j) < 0.0)
        out.push_back({K::kNegativeWeight, i, j, "negative weight at " + at(i, j)});
      if (j > i && a(i, j) != a(j, i) && !net.allow_asymmetric())
        out.push_back({K::kAsymmetry, i, j, "asymmetry at " + at(i, j)});
    }
  }
  std::vector<Index> all(n);
  for (Index i = 0; i < n; ++i) all[i] = i;
  if (n >= 2 && !detail::connected_subset(a, all))
    out.push_back({K::kDisconnected, -1, -1, "network is not connected"});
  return out;
}

/// Clusters whose induced subgraph is disconnected (0-based cluster ids).
inline std::vector<Index> disconnected_clusters(const Network& net,
                                                const Partition& part) {
  std::vector<Index> bad;
  for (Index k = 0; k < part.cluster_count(); ++k)
    if (!detail::connected_subset(net.adjacency(), part.cluster(k)))
      bad.push_back(k);
  return bad;
}

inline void require_compatible(const Network& net, const Partition& part) {
  if (net.size() != part.node_count())
    throw InputError("partition covers " + std::to_string(part.node_count()) +
                     " nodes but the network has " + std::to_string(net.size()));
}

inline constexpr double kDefaultFrequencyTolerance = 1e-12;

/// True iff all natural frequencies inside every cluster agree within `tol`.
inline bool check_a2(const Network& net, const Partition& part,
                     double tol = kDefaultFrequencyTolerance) {
  require_compatible(net, part);
  for (const auto& c : part.clusters())
    for (Index v : c)
      if (std::abs(net.omega()(v) - net.omega()(c.front())) > tol) return false;
  return true;
}

/// sum_{r in P_cluster} a_{node,r}.
inline double quotient_weight(const Network& net, const Partition& part,
                              Index node, Index cluster) {
  double s = 0.0;
  for (Index r : part.cluster(cluster)) s += net.weight(node, r);
  return s;
}

struct A3Result {
  bool ok = true;
  /// Largest |sum_{k in P_l} (a_ik - a_jk)| over clusters z != l, i, j in P_z.
  double worst_violation = 0.0;
};

inline A3Result check_a3(const Network& net, const Partition& part, double tol) {
  require_compatible(net, part);
  A3Result r;
  const Index m = part.cluster_count();
  for (Index z = 0; z < m; ++z) {
    for (Index l = 0; l < m; ++l) {
      if (l == z) continue;
      double lo = std::numeric_limits<double>::infinity();
      double hi = -lo;
      for (Index i : part.cluster(z)) {
        const double w = quotient_weight(net, part, i, l);
        lo = std::min(lo, w);
        hi = std::max(hi, w);
      }
      r.worst_violation = std::max(r.worst_violation, hi - lo);
    }
  }
  r.ok = r.worst_violation <= tol;
  return r;
}

inline A3Result check_a3(const Network& net, const Partition& part) {
  return check_a3(net, part, net.default_weight_tolerance());
}

/// Common natural frequency of a cluster (meaningful once A2 holds).
inline double cluster_frequency(const Network& net, const Partition& part, Index k) {
  return net.omega()(part.cluster(k).front());
}

struct PairMargin {
  Index first = 0;   ///< cluster l (0-based)
  Index second = 0;  ///< cluster z (0-based), first < second
  double margin = 0.0;
  bool passes = false;  ///< false means "inconclusive", not "merges"
};

/// For each cluster pair (l, z):
///   margin = |w_l - w_z| - 2 (m-2) max_{k != l,z} max(q(l,k), q(z,k))
/// with q the quotient weights of a representative node. A positive margin
/// rules out an invariant submanifold on which l and z share a phase.
inline std::vector<PairMargin> check_no_submanifold(const Network& net,
                                                    const Partition& part) {
  require_compatible(net, part);
  const Index m = part.cluster_count();
  std::vector<PairMargin> out;
  for (Index l = 0; l < m; ++l) {
    for (Index z = l + 1; z < m; ++z) {
      const Index rep_l = part.cluster(l).front();
      const Index rep_z = part.cluster(z).front();
      double coupling = 0.0;
      for (Index k = 0; k < m; ++k) {
        if (k == l || k == z) continue;
        coupling = std::max({coupling, quotient_weight(net, part, rep_l, k),
                             quotient_weight(net, part, rep_z, k)});
      }
      PairMargin pm;
      pm.first = l;
      pm.second = z;
      pm.margin = std::abs(cluster_frequency(net, part, l) -
                           cluster_frequency(net, part, z)) -
                  2.0 * static_cast<double>(m - 2) * coupling;
      pm.passes = pm.margin > 0.0;
      out.push_back(pm);
    }
  }
  return out;
}

struct CheckTolerances {
  double weights = -1.0;  ///< negative selects the network default
  double frequency = kDefaultFrequencyTolerance;
};

struct CheckReport {
  std::vector<Violation> violations;
  std::vector<Index> disconnected_clusters;
  bool a2_ok = false;
  bool a3_ok = false;
  double a3_worst_violation = 0.0;
  double tol_weights = 0.0;
  bool no_submanifold_ok = false;
  std::vector<PairMargin> per_pair_margins;

  /// Usable for the stability analysis: valid graph, connected clusters,
  /// and the manifold is invariant.
  bool ok() const {
    return violations.empty() && disconnected_clusters.empty() && a2_ok && a3_ok;
  }
};

inline CheckReport run_checks(const Network& net, const Partition& part,
                              CheckTolerances tol = {}) {
  CheckReport r;
  r.violations = validate_network(net);
  r.disconnected_clusters = disconnected_clusters(net, part);
  r.tol_weights = tol.weights < 0.0 ? net.default_weight_tolerance() : tol.weights;
  r.a2_ok = check_a2(net, part, tol.frequency);
  const auto a3 = check_a3(net, part, r.tol_weights);
  r.a3_ok = a3.ok;
  r.a3_worst_violation = a3.worst_violation;
  r.per_pair_margins = check_no_submanifold(net, part);
  r.no_submanifold_ok = std::all_of(r.per_pair_margins.begin(),
                                    r.per_pair_margins.end(),
                                    [](const PairMargin& p) { return p.passes; });
  return r;
}

/// Throws InputError unless the manifold is invariant and the clusters are
/// connected. Global connectivity is not required here.
inline void require_invariant_manifold(const Network& net, const Partition& part,
                                       CheckTolerances tol = {}) {
  require_compatible(net, part);
  if (!net.allow_asymmetric() && !net.is_symmetric())
    throw InputError("adjacency is not symmetric");
  if (auto bad = disconnected_clusters(net, part); !bad.empty())
    throw InputError("cluster " + std::to_string(bad.front() + 1) +
                     " induces a disconnected subgraph");
  if (!check_a2(net, part, tol.frequency))
    throw InputError("natural frequencies differ inside a cluster");
  const double tw = tol.weights < 0.0 ? net.default_weight_tolerance() : tol.weights;
  if (const auto a3 = check_a3(net, part, tw); !a3.ok)
    throw InputError("cluster weights are not equitable (worst violation " +
                     std::to_string(a3.worst_violation) + ")");
}

}  // namespace clustersync
