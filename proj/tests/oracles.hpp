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

// Independent reference computations used by the tests. Nothing here calls
// the library routine it is meant to check.

#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <queue>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "clustersync/graph_algebra.hpp"
#include "clustersync/network.hpp"

namespace oracle {

using clustersync::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

/// Classic RK4 for a scalar ODE; returns x(t) on a uniform grid.
inline std::vector<double> rk4_scalar(const std::function<double(double)>& f, double x0,
                                      double h, Index steps) {
  std::vector<double> out{x0};
  double x = x0;
  for (Index s = 0; s < steps; ++s) {
    const double k1 = f(x), k2 = f(x + 0.5 * h * k1), k3 = f(x + 0.5 * h * k2),
                 k4 = f(x + h * k3);
    x += h / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);
    out.push_back(x);
  }
  return out;
}

/// Composite trapezoid rule; spectrally accurate for periodic integrands
/// over a full period.
inline double trapezoid(const std::function<double(double)>& f, double a, double b, Index n) {
  const double h = (b - a) / static_cast<double>(n);
  double s = 0.5 * (f(a) + f(b));
  for (Index k = 1; k < n; ++k) s += f(a + k * h);
  return s * h;
}

/// Period of dx/dt = w - a sin x as the integral of dx / (w - a sin x).
inline double rotation_period(double w, double a) {
  return trapezoid([&](double x) { return 1.0 / (w - a * std::sin(x)); }, 0.0,
                   2.0 * M_PI, 4096);
}

/// Weighted Laplacian of the subgraph induced by `nodes`.
inline MatrixXd induced_laplacian(const MatrixXd& a, const std::vector<Index>& nodes) {
  const Index k = static_cast<Index>(nodes.size());
  MatrixXd l = MatrixXd::Zero(k, k);
  for (Index r = 0; r < k; ++r)
    for (Index c = 0; c < k; ++c)
      if (r != c) {
        l(r, c) = -a(nodes[r], nodes[c]);
        l(r, r) += a(nodes[r], nodes[c]);
      }
  return l;
}

/// Nonzero (all but the smallest) Laplacian eigenvalues, ascending.
inline std::vector<double> nonzero_laplacian_spectrum(const MatrixXd& l) {
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(l);
  std::vector<double> ev(es.eigenvalues().data() + 1,
                         es.eigenvalues().data() + es.eigenvalues().size());
  return ev;
}

/// Kuramoto vector field, dense double loop.
inline VectorXd kuramoto(const MatrixXd& a, const VectorXd& omega, const VectorXd& th) {
  VectorXd d = omega;
  for (Index i = 0; i < th.size(); ++i)
    for (Index j = 0; j < th.size(); ++j) d(i) += a(i, j) * std::sin(th(j) - th(i));
  return d;
}

/// Phases with theta_0 = 0 whose tree differences equal x (tree edges in
/// coordinate order), found by walking the tree.
inline VectorXd phases_from_tree(Index n, const clustersync::EdgeList& tree, const VectorXd& x) {
  std::vector<std::vector<std::pair<Index, Index>>> adj(n);
  for (Index c = 0; c < static_cast<Index>(tree.size()); ++c) {
    adj[tree[c].source].push_back({tree[c].sink, c});
    adj[tree[c].sink].push_back({tree[c].source, c});
  }
  VectorXd th = VectorXd::Zero(n);
  std::vector<char> seen(n, 0);
  std::queue<Index> q;
  q.push(0);
  seen[0] = 1;
  while (!q.empty()) {
    const Index u = q.front();
    q.pop();
    for (auto [v, c] : adj[u]) {
      if (seen[v]) continue;
      seen[v] = 1;
      // x_c = theta_sink - theta_source
      th(v) = (tree[c].sink == v) ? th(u) + x(c) : th(u) - x(c);
      q.push(v);
    }
  }
  return th;
}

/// Central-difference Jacobian of the intra-coordinate vector field with
/// respect to x_intra at (x_intra = 0, x_inter = x0), for a two-cluster
/// spanning structure.
inline MatrixXd intra_jacobian_fd(const clustersync::Network& net,
                                  const clustersync::SpanningStructure& s, double x0,
                                  double h = 1e-6) {
  const Index n = net.size();
  const Index d = s.intra_size();
  const auto& tree = s.tree_edges();
  auto field = [&](const VectorXd& xi) {
    VectorXd x(n - 1);
    x << xi, VectorXd::Constant(n - 1 - d, x0);
    const VectorXd th = phases_from_tree(n, tree, x);
    const VectorXd dth = kuramoto(net.adjacency(), net.omega(), th);
    VectorXd out(d);
    for (Index c = 0; c < d; ++c) out(c) = dth(tree[c].sink) - dth(tree[c].source);
    return out;
  };
  MatrixXd j(d, d);
  for (Index c = 0; c < d; ++c) {
    VectorXd e = VectorXd::Zero(d);
    e(c) = h;
    j.col(c) = (field(e) - field(-e)) / (2.0 * h);
  }
  return j;
}

/// Random connected weighted graph on k nodes: random tree plus extra edges.
inline MatrixXd random_connected(Index k, std::mt19937_64& rng, double extra_prob = 0.4) {
  std::uniform_real_distribution<double> w(0.1, 2.0), u(0.0, 1.0);
  MatrixXd a = MatrixXd::Zero(k, k);
  for (Index v = 1; v < k; ++v) {
    std::uniform_int_distribution<Index> parent(0, v - 1);
    const Index p = parent(rng);
    a(v, p) = a(p, v) = w(rng);
  }
  for (Index i = 0; i < k; ++i)
    for (Index j = i + 1; j < k; ++j)
      if (a(i, j) == 0.0 && u(rng) < extra_prob) a(i, j) = a(j, i) = w(rng);
  return a;
}

}  // namespace oracle
