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

// Parameterized network description. Edge weights and natural frequencies
// may be literal numbers or names of parameters, so a single model covers a
// whole family of networks (e.g. a sweep over the inter-cluster coupling).

#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "clustersync/common.hpp"
#include "clustersync/network.hpp"

namespace clustersync {

/// A number or the name of a parameter.
using Value = std::variant<double, std::string>;

struct ModelEdge {
  Index i = 0;  ///< 0-based
  Index j = 0;
  Value weight = 1.0;
};

struct NetworkModel {
  std::string description;
  Index n = 0;
  std::vector<std::pair<std::string, double>> params;  ///< declaration order
  std::vector<ModelEdge> edges;
  std::vector<Value> omega;
  std::vector<std::vector<Index>> clusters;  ///< 0-based
  /// Edges are directed (i -> j sets a_ij only) and the symmetry check is
  /// relaxed.
  bool allow_asymmetric = false;

  std::optional<double> param(const std::string& name) const {
    for (const auto& [k, v] : params)
      if (k == name) return v;
    return std::nullopt;
  }

  void set_param(const std::string& name, double value) {
    for (auto& [k, v] : params)
      if (k == name) {
        v = value;
        return;
      }
    throw InputError("unknown parameter '" + name + "'");
  }

  /// Sets `family` and every parameter named family<digits> (so "alpha"
  /// covers alpha1, alpha2, ...). Returns the number of parameters changed.
  int set_family(const std::string& family, double value) {
    int hits = 0;
    for (auto& [k, v] : params) {
      if (k.rfind(family, 0) != 0) continue;
      const std::string rest = k.substr(family.size());
      bool digits = true;
      for (char c : rest) digits = digits && std::isdigit(static_cast<unsigned char>(c));
      if (digits) {
        v = value;
        ++hits;
      }
    }
    if (hits == 0) throw InputError("no parameter matches '" + family + "'");
    return hits;
  }

  double resolve(const Value& v) const {
    if (const double* d = std::get_if<double>(&v)) return *d;
    const auto& name = std::get<std::string>(v);
    if (auto p = param(name)) return *p;
    throw InputError("undefined parameter '" + name + "'");
  }

  void validate() const {
    if (n < 1) throw InputError("n must be positive");
    std::set<std::string> names;
    for (const auto& [k, v] : params)
      if (!names.insert(k).second) throw InputError("parameter '" + k + "' declared twice");
    if (static_cast<Index>(omega.size()) != n)
      throw InputError("omega has " + std::to_string(omega.size()) + " entries, expected " +
                       std::to_string(n));
    std::set<std::pair<Index, Index>> seen;
    for (const auto& e : edges) {
      if (e.i < 0 || e.i >= n || e.j < 0 || e.j >= n)
        throw InputError("edge (" + std::to_string(e.i + 1) + "," + std::to_string(e.j + 1) +
                         ") references a node outside 1.." + std::to_string(n));
      const std::pair<Index, Index> key =
          allow_asymmetric ? std::pair{e.i, e.j} : std::pair{std::min(e.i, e.j), std::max(e.i, e.j)};
      if (!seen.insert(key).second)
        throw InputError("duplicate edge (" + std::to_string(e.i + 1) + "," +
                         std::to_string(e.j + 1) + ")");
      resolve(e.weight);
    }
    for (const auto& w : omega) resolve(w);
  }

  Network network() const {
    validate();
    MatrixXd a = MatrixXd::Zero(n, n);
    for (const auto& e : edges) {
      const double w = resolve(e.weight);
      a(e.i, e.j) = w;
      if (!allow_asymmetric) a(e.j, e.i) = w;
    }
    VectorXd om(n);
    for (Index i = 0; i < n; ++i) om(i) = resolve(omega[i]);
    return Network(std::move(a), std::move(om), allow_asymmetric);
  }

  Partition partition() const { return Partition(clusters, n); }
};

}  // namespace clustersync
