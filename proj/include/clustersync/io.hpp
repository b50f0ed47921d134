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

// Network files (YAML, node ids 1-based):
//
//   # free-form comments
//   description: optional text
//   n: 6
//   params: {alpha: 1.0, beta: 0.1}     # optional, names usable below
//   edges:                               # undirected unless allow_asymmetric
//     - [1, 2, alpha]
//     - [1, 4, 0.5]
//   omega: [1, 1, 1, 6, 6, 6]            # numbers or parameter names
//   clusters: [[1, 2, 3], [4, 5, 6]]
//   allow_asymmetric: false              # optional; edges become i -> j
//
// Unknown keys, duplicate edges and malformed entries are rejected with the
// offending line number.

#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <system_error>

#include <yaml-cpp/yaml.h>

#include "clustersync/model.hpp"

namespace clustersync {

namespace detail {

inline std::string at_line(const YAML::Node& node) {
  const auto mark = node.Mark();
  if (mark.line < 0) return "";
  return " (line " + std::to_string(mark.line + 1) + ")";
}

inline bool is_identifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_'))
    return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  return true;
}

inline double parse_number(const YAML::Node& node, const std::string& what) {
  if (!node.IsScalar()) throw InputError(what + " must be a number" + at_line(node));
  const std::string& s = node.Scalar();
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw InputError(what + " must be a number, got '" + s + "'" + at_line(node));
  return v;
}

inline Value parse_value(const YAML::Node& node, const std::string& what) {
  if (!node.IsScalar()) throw InputError(what + " must be a number or name" + at_line(node));
  const std::string& s = node.Scalar();
  if (is_identifier(s)) return s;
  return parse_number(node, what);
}

inline Index parse_node_id(const YAML::Node& node, Index n, const std::string& what) {
  const double v = parse_number(node, what);
  if (v != std::floor(v) || v < 1 || v > static_cast<double>(n))
    throw InputError(what + " must be an integer in 1.." + std::to_string(n) + at_line(node));
  return static_cast<Index>(v) - 1;
}

inline std::string format_number(double v) {
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

inline std::string format_value(const Value& v) {
  if (const double* d = std::get_if<double>(&v)) return format_number(*d);
  return std::get<std::string>(v);
}

}  // namespace detail

inline NetworkModel parse_model(const YAML::Node& root) {
  using namespace detail;
  if (!root.IsMap()) throw InputError("network file must be a mapping" + at_line(root));
  static const std::set<std::string> known{"description", "n",        "params",
                                           "edges",       "omega",    "clusters",
                                           "allow_asymmetric"};
  for (const auto& kv : root) {
    const std::string key = kv.first.as<std::string>();
    if (!known.count(key)) throw InputError("unknown field '" + key + "'" + at_line(kv.first));
  }
  for (const char* req : {"n", "edges", "omega", "clusters"})
    if (!root[req]) throw InputError(std::string("missing field '") + req + "'");

  NetworkModel m;
  if (root["description"]) m.description = root["description"].as<std::string>();
  const double n = parse_number(root["n"], "n");
  if (n != std::floor(n) || n < 1) throw InputError("n must be a positive integer" +
                                                    at_line(root["n"]));
  m.n = static_cast<Index>(n);

  if (const auto p = root["params"]) {
    if (!p.IsMap()) throw InputError("params must be a mapping" + at_line(p));
    for (const auto& kv : p) {
      const std::string name = kv.first.as<std::string>();
      if (!is_identifier(name))
        throw InputError("parameter name '" + name + "' is not an identifier" +
                         at_line(kv.first));
      if (m.param(name))
        throw InputError("parameter '" + name + "' declared twice" + at_line(kv.first));
      m.params.emplace_back(name, parse_number(kv.second, "parameter '" + name + "'"));
    }
  }

  if (const auto a = root["allow_asymmetric"]) {
    if (!a.IsScalar() || (a.Scalar() != "true" && a.Scalar() != "false"))
      throw InputError("allow_asymmetric must be true or false" + at_line(a));
    m.allow_asymmetric = a.Scalar() == "true";
  }

  const auto edges = root["edges"];
  if (!edges.IsSequence()) throw InputError("edges must be a list" + at_line(edges));
  std::set<std::pair<Index, Index>> seen;
  for (const auto& e : edges) {
    if (!e.IsSequence() || e.size() != 3)
      throw InputError("each edge must be [i, j, weight]" + at_line(e));
    ModelEdge me{parse_node_id(e[0], m.n, "edge endpoint"),
                 parse_node_id(e[1], m.n, "edge endpoint"), parse_value(e[2], "edge weight")};
    if (me.i == me.j) throw InputError("self-loop edge" + at_line(e));
    const std::pair<Index, Index> key =
        m.allow_asymmetric ? std::pair{me.i, me.j}
                           : std::pair{std::min(me.i, me.j), std::max(me.i, me.j)};
    if (!seen.insert(key).second) throw InputError("duplicate edge" + at_line(e));
    m.edges.push_back(std::move(me));
  }

  const auto omega = root["omega"];
  if (!omega.IsSequence()) throw InputError("omega must be a list" + at_line(omega));
  for (const auto& w : omega) m.omega.push_back(parse_value(w, "omega entry"));

  const auto clusters = root["clusters"];
  if (!clusters.IsSequence()) throw InputError("clusters must be a list" + at_line(clusters));
  for (const auto& c : clusters) {
    if (!c.IsSequence()) throw InputError("each cluster must be a list of nodes" + at_line(c));
    std::vector<Index> nodes;
    for (const auto& v : c) nodes.push_back(parse_node_id(v, m.n, "cluster member"));
    m.clusters.push_back(std::move(nodes));
  }

  m.validate();
  return m;
}

inline NetworkModel parse_model_string(const std::string& text) {
  try {
    return parse_model(YAML::Load(text));
  } catch (const YAML::Exception& e) {
    throw InputError(std::string("malformed network file: ") + e.what());
  }
}

inline NetworkModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_model_string(ss.str());
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

/// Writes the model in the file format above. `comment` lines are emitted
/// as a leading "#" block.
inline std::string format_model(const NetworkModel& m, const std::string& comment = "") {
  using detail::format_number;
  using detail::format_value;
  std::ostringstream o;
  if (!comment.empty()) {
    std::istringstream lines(comment);
    for (std::string line; std::getline(lines, line);) o << "# " << line << "\n";
  }
  if (!m.description.empty()) {
    YAML::Emitter e;
    e << YAML::DoubleQuoted << m.description;
    o << "description: " << e.c_str() << "\n";
  }
  o << "n: " << m.n << "\n";
  if (!m.params.empty()) {
    o << "params:\n";
    for (const auto& [k, v] : m.params) o << "  " << k << ": " << format_number(v) << "\n";
  }
  if (m.allow_asymmetric) o << "allow_asymmetric: true\n";
  o << "edges:\n";
  for (const auto& e : m.edges)
    o << "  - [" << e.i + 1 << ", " << e.j + 1 << ", " << format_value(e.weight) << "]\n";
  o << "omega: [";
  for (std::size_t i = 0; i < m.omega.size(); ++i)
    o << (i ? ", " : "") << format_value(m.omega[i]);
  o << "]\nclusters:\n";
  for (const auto& c : m.clusters) {
    o << "  - [";
    for (std::size_t i = 0; i < c.size(); ++i) o << (i ? ", " : "") << c[i] + 1;
    o << "]\n";
  }
  return o.str();
}

}  // namespace clustersync
