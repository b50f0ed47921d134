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

// One-call analysis of a network and parameter sweeps over a model.

#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "clustersync/model.hpp"
#include "clustersync/network.hpp"
#include "clustersync/simulate.hpp"
#include "clustersync/stability.hpp"

namespace clustersync {

struct AnalysisOptions {
  CheckTolerances tol{};
  JacobianOptions jacobian{};
  bool floquet = true;  ///< two clusters only
  FloquetOptions floquet_options{};
};

struct StabilityReport {
  CheckReport checks;
  std::optional<Theorem1Report> m_matrix;       ///< S-matrix certificate
  std::optional<Theorem3Report> frequency;      ///< two clusters
  std::optional<Theorem4Report> homogeneous;    ///< two clusters
  std::optional<FloquetResult> floquet;         ///< two clusters
  std::string skipped;  ///< why a part of the analysis was not run

  bool certified() const {
    return (m_matrix && m_matrix->is_m_matrix) || (frequency && frequency->holds) ||
           (homogeneous && homogeneous->holds);
  }
};

inline StabilityReport analyze(const Network& net, const Partition& part,
                               const AnalysisOptions& opt = {}) {
  StabilityReport r;
  r.checks = run_checks(net, part, opt.tol);
  if (!r.checks.ok()) {
    r.skipped = "invariance checks failed";
    return r;
  }
  const auto blocks = build_cluster_blocks(net, part);
  r.m_matrix = theorem1_check(net, part, blocks, opt.jacobian, opt.tol);
  if (part.cluster_count() == 2) {
    r.frequency = theorem3_check(net, part, blocks, opt.jacobian, opt.tol);
    r.homogeneous = theorem4_check(r.m_matrix->intra);
    if (opt.floquet) {
      FloquetOptions fo = opt.floquet_options;
      fo.jacobian = opt.jacobian;
      r.floquet = floquet_two_cluster(net, part, fo);
    }
  } else {
    r.skipped = "two-cluster results need exactly two clusters";
  }
  return r;
}

struct SweepRow {
  double value = 0.0;
  bool m_matrix = false;
  double m_matrix_min_minor = 0.0;
  double omega_bar = std::nan("");
  double a_bar = std::nan("");
  double frequency_lhs = std::nan("");
  double frequency_rhs = std::nan("");
  bool frequency = false;
  double floquet_exponent = std::nan("");
  bool floquet_stable = false;
  bool floquet_fallback = false;
};

/// Evenly spaced (or log-spaced) grid of `points` values in [from, to].
inline std::vector<double> sweep_grid(double from, double to, Index points, bool log_scale) {
  if (points < 1) throw InputError("sweep needs at least one point");
  if (log_scale && !(from > 0.0 && to > 0.0))
    throw InputError("log sweep needs positive bounds");
  std::vector<double> out;
  for (Index k = 0; k < points; ++k) {
    const double s = points == 1 ? 0.0 : static_cast<double>(k) / static_cast<double>(points - 1);
    out.push_back(log_scale ? std::exp(std::log(from) + s * (std::log(to) - std::log(from)))
                            : from + s * (to - from));
  }
  return out;
}

/// Evaluates the certificates (and optionally Floquet) while the parameter
/// family `param` takes each grid value.
inline std::vector<SweepRow> sweep(NetworkModel model, const std::string& param,
                                   const std::vector<double>& grid,
                                   const AnalysisOptions& opt = {}) {
  std::vector<SweepRow> rows;
  for (double v : grid) {
    model.set_family(param, v);
    const Network net = model.network();
    const Partition part = model.partition();
    const StabilityReport rep = analyze(net, part, opt);
    SweepRow row;
    row.value = v;
    if (rep.m_matrix) {
      row.m_matrix = rep.m_matrix->is_m_matrix;
      const auto& minors = rep.m_matrix->m_test.leading_minors;
      row.m_matrix_min_minor =
          minors.empty() ? 0.0 : *std::min_element(minors.begin(), minors.end());
    }
    if (rep.frequency) {
      row.omega_bar = rep.frequency->omega_bar;
      row.a_bar = rep.frequency->a_bar;
      row.frequency_lhs = rep.frequency->lhs;
      row.frequency_rhs = rep.frequency->rhs;
      row.frequency = rep.frequency->holds;
    }
    if (rep.floquet) {
      row.floquet_exponent = rep.floquet->max_exponent;
      row.floquet_stable = rep.floquet->stable;
      row.floquet_fallback = rep.floquet->equilibrium_fallback;
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace clustersync
