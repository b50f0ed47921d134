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

// Small dense linear algebra used by the certificates.

#pragma once

#include <algorithm>
#include <limits>
#include <vector>

#include <Eigen/Eigenvalues>

#include "clustersync/common.hpp"

namespace clustersync {

inline constexpr double kHurwitzThreshold = -1e-10;

inline Eigen::VectorXcd eigenvalues(const MatrixXd& a) {
  if (a.rows() == 0) return {};
  return Eigen::EigenSolver<MatrixXd>(a, false).eigenvalues();
}

inline double spectral_abscissa(const MatrixXd& a) {
  if (a.rows() == 0) return -std::numeric_limits<double>::infinity();
  return eigenvalues(a).real().maxCoeff();
}

inline bool is_hurwitz(const MatrixXd& a, double threshold = kHurwitzThreshold) {
  return spectral_abscissa(a) < threshold;
}

/// Induced 2-norm.
inline double spectral_norm(const MatrixXd& a) {
  if (a.size() == 0) return 0.0;
  return Eigen::JacobiSVD<MatrixXd>(a).singularValues()(0);
}

inline double lambda_max_symmetric(const MatrixXd& a) {
  return Eigen::SelfAdjointEigenSolver<MatrixXd>(a, Eigen::EigenvaluesOnly)
      .eigenvalues()
      .maxCoeff();
}

inline double lambda_min_symmetric(const MatrixXd& a) {
  return Eigen::SelfAdjointEigenSolver<MatrixXd>(a, Eigen::EigenvaluesOnly)
      .eigenvalues()
      .minCoeff();
}

/// Solves J^T X + X J = -Q for Hurwitz J through the Kronecker form
/// (I (x) J^T + J^T (x) I) vec(X) = -vec(Q).
inline MatrixXd lyapunov_solve(const MatrixXd& j, const MatrixXd& q) {
  const Index d = j.rows();
  if (j.cols() != d || q.rows() != d || q.cols() != d)
    throw InputError("lyapunov_solve: dimension mismatch");
  if (d == 0) return MatrixXd(0, 0);
  if (!is_hurwitz(j))
    throw InputError("Lyapunov equation has no PD solution: J is not Hurwitz");
  const MatrixXd id = MatrixXd::Identity(d, d);
  const MatrixXd jt = j.transpose();
  MatrixXd k(d * d, d * d);
  for (Index r = 0; r < d; ++r)
    for (Index c = 0; c < d; ++c)
      k.block(r * d, c * d, d, d) = id(r, c) * jt + jt(r, c) * id;
  const VectorXd rhs = -Eigen::Map<const VectorXd>(q.data(), d * d);
  const VectorXd v = k.fullPivLu().solve(rhs);
  MatrixXd x = Eigen::Map<const MatrixXd>(v.data(), d, d);
  return 0.5 * (x + x.transpose());
}

struct MMatrixTest {
  bool offdiagonal_nonpositive = false;
  std::vector<double> leading_minors;
  bool is_m_matrix = false;
};

/// Nonpositive off-diagonal entries and all leading principal minors > 0.
inline MMatrixTest m_matrix_test(const MatrixXd& s) {
  MMatrixTest t;
  t.offdiagonal_nonpositive = true;
  for (Index r = 0; r < s.rows(); ++r)
    for (Index c = 0; c < s.cols(); ++c)
      if (r != c && s(r, c) > 0.0) t.offdiagonal_nonpositive = false;
  bool minors_ok = s.rows() > 0;
  for (Index k = 1; k <= s.rows(); ++k) {
    const double det = s.topLeftCorner(k, k).determinant();
    t.leading_minors.push_back(det);
    if (!(det > 0.0)) minors_ok = false;
  }
  t.is_m_matrix = t.offdiagonal_nonpositive && minors_ok;
  return t;
}

}  // namespace clustersync
