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

// Analytical stability certificates for the cluster synchronization
// manifold.
//
//  * weight certificate: the m x m matrix
//        s_kk = 1 / lambda_max(X_k) - gamma_kk,   s_kl = -gamma_kl,
//    with J_k^T X_k + X_k J_k = -I, is an M-matrix;
//  * two-cluster frequency certificate:
//        ((w + a)/(w - a))^{(2/a) |J_inter|} < 1 + 1 / (2 lambda_max(X) |J_intra|);
//  * two-cluster homogeneous certificate: J_intra is a negative multiple of I.
//
// All three are sufficient conditions only.

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "clustersync/common.hpp"
#include "clustersync/graph_algebra.hpp"
#include "clustersync/linalg.hpp"
#include "clustersync/network.hpp"
#include "clustersync/nominal.hpp"

namespace clustersync {

struct IntraJacobian {
  std::vector<MatrixXd> blocks;            ///< J_k, (|P_k|-1) square
  MatrixXd assembled;                      ///< blk-diag(J_1, ..., J_m)
  std::vector<Eigen::VectorXcd> spectra;   ///< eigenvalues of each J_k
  std::vector<double> norms;               ///< spectral norm of each J_k
  double norm = 0.0;                       ///< spectral norm of J_intra
};

struct JacobianOptions {
  /// Required for asymmetric adjacency: the caller vouches that J_intra is
  /// Hurwitz. It is still verified numerically.
  bool assert_hurwitz = false;
};

/// J_k = -B_span,k^T B_k diag(a) T_intra,k for symmetric weights. With
/// asymmetric weights the row-sum Laplacian L_k of the cluster is used,
/// J_k = -B_span,k^T L_k (B_span,k^T)^+, which coincides with the former
/// when the weights are symmetric.
inline MatrixXd cluster_jacobian(const Network& net, const ClusterBlock& b) {
  if (net.is_symmetric()) {
    return -b.tree_incidence.transpose() * b.incidence * b.weights.asDiagonal() * b.t_intra;
  }
  const Index s = static_cast<Index>(b.nodes.size());
  MatrixXd lap = MatrixXd::Zero(s, s);
  for (Index r = 0; r < s; ++r)
    for (Index c = 0; c < s; ++c)
      if (r != c) {
        const double w = net.weight(b.nodes[r], b.nodes[c]);
        lap(r, c) -= w;
        lap(r, r) += w;
      }
  return -b.tree_incidence.transpose() * lap * b.tree_pinv;
}

namespace detail {

inline MatrixXd block_diagonal(const std::vector<MatrixXd>& blocks) {
  Index d = 0;
  for (const auto& b : blocks) d += b.rows();
  MatrixXd out = MatrixXd::Zero(d, d);
  Index off = 0;
  for (const auto& b : blocks) {
    out.block(off, off, b.rows(), b.cols()) = b;
    off += b.rows();
  }
  return out;
}

}  // namespace detail

inline IntraJacobian jacobian_intra(const Network& net,
                                    const std::vector<ClusterBlock>& blocks,
                                    JacobianOptions opt = {}) {
  if (!net.is_symmetric()) {
    if (!net.allow_asymmetric())
      throw InputError("adjacency is not symmetric");
    if (!opt.assert_hurwitz)
      throw InputError(
          "asymmetric weights: the intra-cluster Jacobian must be asserted Hurwitz");
  }
  IntraJacobian out;
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    MatrixXd jk = cluster_jacobian(net, blocks[k]);
    out.spectra.push_back(eigenvalues(jk));
    out.norms.push_back(spectral_norm(jk));
    if (jk.rows() > 0 && !is_hurwitz(jk))
      throw InvariantError("intra-cluster Jacobian of cluster " + std::to_string(k + 1) +
                           " is not Hurwitz");
    out.blocks.push_back(std::move(jk));
  }
  out.assembled = detail::block_diagonal(out.blocks);
  out.norm = spectral_norm(out.assembled);
  return out;
}

inline IntraJacobian jacobian_intra(const Network& net, const SpanningStructure& s,
                                    JacobianOptions opt = {}) {
  return jacobian_intra(net, s.clusters(), opt);
}

struct GammaTable {
  MatrixXd gamma_tilde;  ///< quotient coupling between clusters
  MatrixXd gamma;        ///< 2 max_r n_intra,r * gamma_tilde
  std::vector<Index> intra_sizes;
};

/// gamma_tilde(k,l) = sum_{j in P_l} a_ij for any i in P_k (l != k);
/// gamma_tilde(k,k) = sum_{l != k} gamma_tilde(k,l).
inline GammaTable gamma_constants(const Network& net, const Partition& part,
                                  double tol_weights = -1.0) {
  require_compatible(net, part);
  const double tol = tol_weights < 0.0 ? net.default_weight_tolerance() : tol_weights;
  if (const auto a3 = check_a3(net, part, tol); !a3.ok)
    throw InputError("gamma constants are ill-defined: cluster weights are not "
                     "equitable (worst violation " + std::to_string(a3.worst_violation) + ")");
  const Index m = part.cluster_count();
  GammaTable g;
  g.gamma_tilde = MatrixXd::Zero(m, m);
  for (Index k = 0; k < m; ++k) {
    g.intra_sizes.push_back(part.intra_size(k));
    const Index rep = part.cluster(k).front();
    for (Index l = 0; l < m; ++l)
      if (l != k) g.gamma_tilde(k, l) = quotient_weight(net, part, rep, l);
    g.gamma_tilde(k, k) = g.gamma_tilde.row(k).sum();
  }
  g.gamma = 2.0 * static_cast<double>(part.max_intra_size()) * g.gamma_tilde;
  return g;
}

struct Theorem1Report {
  IntraJacobian intra;
  GammaTable gamma;
  std::vector<MatrixXd> lyapunov;          ///< X_k
  std::vector<double> lyapunov_residual;   ///< |J_k^T X_k + X_k J_k + I|_F
  std::vector<double> lambda_max;          ///< lambda_max(X_k)
  /// Clusters with at least one intra coordinate; singletons carry no state
  /// and are left out of S.
  std::vector<Index> s_clusters;
  MatrixXd s;
  MMatrixTest m_test;
  bool is_m_matrix = false;
};

inline MatrixXd assemble_s_matrix(const std::vector<double>& lambda_max,
                                  const GammaTable& g,
                                  const std::vector<Index>& clusters) {
  const Index d = static_cast<Index>(clusters.size());
  MatrixXd s(d, d);
  for (Index r = 0; r < d; ++r)
    for (Index c = 0; c < d; ++c) {
      const Index k = clusters[r], l = clusters[c];
      s(r, c) = (r == c) ? 1.0 / lambda_max[k] - g.gamma(k, k) : -g.gamma(k, l);
    }
  return s;
}

inline Theorem1Report theorem1_check(const Network& net, const Partition& part,
                                     const std::vector<ClusterBlock>& blocks,
                                     JacobianOptions opt = {},
                                     CheckTolerances tol = {}) {
  require_invariant_manifold(net, part, tol);
  Theorem1Report r;
  r.intra = jacobian_intra(net, blocks, opt);
  r.gamma = gamma_constants(net, part, tol.weights);
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    const MatrixXd& jk = r.intra.blocks[k];
    const Index d = jk.rows();
    if (d == 0) {
      r.lyapunov.emplace_back(0, 0);
      r.lyapunov_residual.push_back(0.0);
      r.lambda_max.push_back(0.0);
      continue;
    }
    const MatrixXd id = MatrixXd::Identity(d, d);
    MatrixXd x = lyapunov_solve(jk, id);
    r.lyapunov_residual.push_back((jk.transpose() * x + x * jk + id).norm());
    r.lambda_max.push_back(lambda_max_symmetric(x));
    r.lyapunov.push_back(std::move(x));
    r.s_clusters.push_back(static_cast<Index>(k));
  }
  r.s = assemble_s_matrix(r.lambda_max, r.gamma, r.s_clusters);
  r.m_test = m_matrix_test(r.s);
  r.is_m_matrix = r.m_test.is_m_matrix;
  return r;
}

inline Theorem1Report theorem1_check(const Network& net, const Partition& part,
                                     JacobianOptions opt = {},
                                     CheckTolerances tol = {}) {
  return theorem1_check(net, part, build_cluster_blocks(net, part), opt, tol);
}

/// Constant matrix J such that dG/dx_intra at (x_intra, x_inter) = (0, x)
/// equals cos(x) J, for two clusters. Block (k,k) is
/// -B_span,k^T D_k (B_span,k^T)^+ with D_k the inter-cluster degrees of
/// cluster k, block (k,l) is B_span,k^T A_kl (B_span,l^T)^+.
inline MatrixXd jacobian_inter_coefficient(const Network& net, const Partition& part,
                                           const std::vector<ClusterBlock>& blocks) {
  require_compatible(net, part);
  if (part.cluster_count() != 2)
    throw UnsupportedError("inter-cluster Jacobian is implemented for two clusters only");
  Index d = 0;
  for (const auto& b : blocks) d += b.intra_size();
  MatrixXd j = MatrixXd::Zero(d, d);
  for (Index k = 0; k < 2; ++k) {
    const ClusterBlock& bk = blocks[k];
    const ClusterBlock& bl = blocks[1 - k];
    const Index sk = static_cast<Index>(bk.nodes.size());
    const Index sl = static_cast<Index>(bl.nodes.size());
    MatrixXd cross(sk, sl);
    VectorXd degree(sk);
    for (Index r = 0; r < sk; ++r) {
      for (Index c = 0; c < sl; ++c) cross(r, c) = net.weight(bk.nodes[r], bl.nodes[c]);
      degree(r) = cross.row(r).sum();
    }
    j.block(bk.offset, bk.offset, bk.intra_size(), bk.intra_size()) =
        -bk.tree_incidence.transpose() * degree.asDiagonal() * bk.tree_pinv;
    j.block(bk.offset, bl.offset, bk.intra_size(), bl.intra_size()) =
        bk.tree_incidence.transpose() * cross * bl.tree_pinv;
  }
  return j;
}

inline MatrixXd jacobian_inter_coefficient(const Network& net, const Partition& part,
                                           const SpanningStructure& s) {
  return jacobian_inter_coefficient(net, part, s.clusters());
}

/// Two-cluster frequency data with clusters relabelled so w_2 >= w_1.
struct TwoClusterData {
  double omega_bar = 0.0;
  double a_bar = 0.0;
  bool swapped = false;  ///< input cluster 1 had the larger frequency
};

inline TwoClusterData two_cluster_data(const Network& net, const Partition& part) {
  if (part.cluster_count() != 2)
    throw UnsupportedError("two-cluster analysis needs exactly two clusters");
  TwoClusterData d;
  const double w1 = cluster_frequency(net, part, 0), w2 = cluster_frequency(net, part, 1);
  d.swapped = w1 > w2;
  d.omega_bar = std::abs(w2 - w1);
  d.a_bar = quotient_weight(net, part, part.cluster(0).front(), 1) +
            quotient_weight(net, part, part.cluster(1).front(), 0);
  return d;
}

struct Theorem3Report {
  double omega_bar = 0.0;
  double a_bar = 0.0;
  bool swapped = false;
  Regime regime = Regime::kLimitCycle;
  MatrixXd j_inter;
  double j_inter_norm = 0.0;
  double j_intra_norm = 0.0;
  double lambda_max_x = 0.0;
  double lhs = std::numeric_limits<double>::quiet_NaN();
  double rhs = std::numeric_limits<double>::quiet_NaN();
  bool holds = false;  ///< evaluated only in the limit-cycle regime
};

/// ((w+a)/(w-a))^{(2/a) n}, computed as exp(n * 2 * log1p(2a/(w-a)) / a)
/// so that a -> 0 is well behaved.
inline double frequency_bound_lhs(double omega_bar, double a_bar, double j_inter_norm) {
  if (j_inter_norm == 0.0) return 1.0;
  return std::exp(2.0 * j_inter_norm * cos_integral_bound(omega_bar, a_bar));
}

inline double frequency_bound_rhs(double lambda_max_x, double j_intra_norm) {
  return 1.0 + 1.0 / (2.0 * lambda_max_x * j_intra_norm);
}

inline Theorem3Report theorem3_check(const Network& net, const Partition& part,
                                     const std::vector<ClusterBlock>& blocks,
                                     JacobianOptions opt = {},
                                     CheckTolerances tol = {}) {
  if (part.cluster_count() != 2)
    throw UnsupportedError("frequency certificate is implemented for two clusters only");
  require_invariant_manifold(net, part, tol);
  Theorem3Report r;
  const auto d = two_cluster_data(net, part);
  r.omega_bar = d.omega_bar;
  r.a_bar = d.a_bar;
  r.swapped = d.swapped;
  r.regime = classify_regime(r.omega_bar, r.a_bar);
  const IntraJacobian intra = jacobian_intra(net, blocks, opt);
  r.j_inter = jacobian_inter_coefficient(net, part, blocks);
  r.j_inter_norm = spectral_norm(r.j_inter);
  r.j_intra_norm = intra.norm;
  const Index dim = intra.assembled.rows();
  const MatrixXd x = lyapunov_solve(intra.assembled, MatrixXd::Identity(dim, dim));
  r.lambda_max_x = lambda_max_symmetric(x);
  if (r.regime != Regime::kLimitCycle) return r;
  r.lhs = frequency_bound_lhs(r.omega_bar, r.a_bar, r.j_inter_norm);
  r.rhs = frequency_bound_rhs(r.lambda_max_x, r.j_intra_norm);
  r.holds = r.lhs < r.rhs;
  return r;
}

inline Theorem3Report theorem3_check(const Network& net, const Partition& part,
                                     JacobianOptions opt = {},
                                     CheckTolerances tol = {}) {
  return theorem3_check(net, part, build_cluster_blocks(net, part), opt, tol);
}

struct Theorem4Report {
  double alpha = 0.0;      ///< tr(J_intra) / dim
  double deviation = 0.0;  ///< |J_intra - alpha I|_2
  bool holds = false;
};

/// J_intra equals alpha I with alpha < 0, up to `tol` (default
/// 1e-9 (1 + |alpha|)).
inline Theorem4Report theorem4_check(const IntraJacobian& intra, double tol = -1.0) {
  if (intra.blocks.size() != 2)
    throw UnsupportedError("homogeneous-cluster certificate needs exactly two clusters");
  Theorem4Report r;
  const Index d = intra.assembled.rows();
  if (d == 0) return r;
  r.alpha = intra.assembled.trace() / static_cast<double>(d);
  r.deviation = spectral_norm(intra.assembled - r.alpha * MatrixXd::Identity(d, d));
  const double t = tol < 0.0 ? 1e-9 * (1.0 + std::abs(r.alpha)) : tol;
  r.holds = r.alpha < 0.0 && r.deviation <= t;
  return r;
}

}  // namespace clustersync
