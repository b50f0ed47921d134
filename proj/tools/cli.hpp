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

// Command-line front end. Kept in a header so the tests can drive it with
// in-memory streams.
//
// Exit codes: 0 success, 1 check or certificate failure, 2 input error.

#pragma once

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "clustersync/analysis.hpp"
#include "clustersync/io.hpp"
#include "clustersync/nominal.hpp"
#include "clustersync/scenarios.hpp"
#include "clustersync/simulate.hpp"

namespace clustersync::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitInput = 2;

using json = nlohmann::ordered_json;

inline std::string num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

inline std::string matrix_text(const MatrixXd& m, const std::string& indent = "    ") {
  std::string s;
  for (Index r = 0; r < m.rows(); ++r) {
    s += indent + "[";
    for (Index c = 0; c < m.cols(); ++c) s += (c ? ", " : "") + num(m(r, c));
    s += "]\n";
  }
  return s;
}

inline void write_matrix_csv(const std::filesystem::path& path, const MatrixXd& m) {
  std::ofstream f(path);
  if (!f) throw InputError("cannot write '" + path.string() + "'");
  for (Index r = 0; r < m.rows(); ++r) {
    for (Index c = 0; c < m.cols(); ++c) f << (c ? "," : "") << num(m(r, c));
    f << "\n";
  }
}

inline json matrix_json(const MatrixXd& m) {
  json rows = json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(row);
  }
  return rows;
}

inline json number_json(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

/// Options shared by all subcommands.
struct Common {
  std::uint64_t seed = 1;
  double dt = 1e-3;
  std::optional<double> horizon;
  double tol_weights = -1.0;
  double tol_frequency = kDefaultFrequencyTolerance;
  double tol_floquet = 1e-6;
  Index floquet_steps = 10000;
  bool assume_hurwitz = false;
  std::vector<std::string> sets;  ///< name=value
  std::optional<double> alpha, beta, omega;

  SimConfig sim(double default_horizon) const {
    SimConfig c;
    c.seed = seed;
    c.dt = dt;
    c.horizon = horizon.value_or(default_horizon);
    return c;
  }

  AnalysisOptions analysis() const {
    AnalysisOptions o;
    o.tol.weights = tol_weights;
    o.tol.frequency = tol_frequency;
    o.jacobian.assert_hurwitz = assume_hurwitz;
    o.floquet_options.exponent_tol = tol_floquet;
    o.floquet_options.steps_per_period = floquet_steps;
    return o;
  }

  void apply(NetworkModel& m) const {
    if (alpha) m.set_family("alpha", *alpha);
    if (beta) m.set_family("beta", *beta);
    if (omega) m.set_family("omega", *omega);
    for (const auto& s : sets) {
      const auto eq = s.find('=');
      if (eq == std::string::npos) throw InputError("--set expects name=value, got '" + s + "'");
      double v = 0.0;
      try {
        std::size_t used = 0;
        v = std::stod(s.substr(eq + 1), &used);
        if (used != s.size() - eq - 1) throw std::invalid_argument(s);
      } catch (const std::logic_error&) {
        throw InputError("--set value is not a number in '" + s + "'");
      }
      m.set_param(s.substr(0, eq), v);
    }
  }
};

struct Loaded {
  NetworkModel model;
  Network net;
  Partition part;
};

inline Loaded load(const std::string& path, const Common& common) {
  NetworkModel m = load_model(path);
  common.apply(m);
  Network net = m.network();
  Partition part = m.partition();
  return {std::move(m), std::move(net), std::move(part)};
}

// ---------------------------------------------------------------------------

inline void print_checks(const CheckReport& r, std::ostream& out) {
  out << "graph: " << (r.violations.empty() ? "ok" : "invalid") << "\n";
  for (const auto& v : r.violations) out << "  " << v.message << "\n";
  out << "clusters connected: " << (r.disconnected_clusters.empty() ? "yes" : "no") << "\n";
  for (Index k : r.disconnected_clusters)
    out << "  cluster " << k + 1 << " induces a disconnected subgraph\n";
  out << "equal frequencies within clusters: " << (r.a2_ok ? "yes" : "no") << "\n";
  out << "equitable partition: " << (r.a3_ok ? "yes" : "no")
      << " (worst row-sum mismatch " << num(r.a3_worst_violation) << ", tolerance "
      << num(r.tol_weights) << ")\n";
  out << "no-submanifold margins: " << (r.no_submanifold_ok ? "all positive" : "inconclusive")
      << "\n";
  for (const auto& p : r.per_pair_margins)
    out << "  clusters " << p.first + 1 << "," << p.second + 1 << ": margin " << num(p.margin)
        << (p.passes ? "" : " (inconclusive)") << "\n";
  out << "manifold invariant: " << (r.ok() ? "yes" : "no") << "\n";
}

inline json checks_json(const CheckReport& r) {
  json j;
  j["ok"] = r.ok();
  json v = json::array();
  for (const auto& x : r.violations) v.push_back(x.message);
  j["violations"] = v;
  json d = json::array();
  for (Index k : r.disconnected_clusters) d.push_back(k + 1);
  j["disconnected_clusters"] = d;
  j["equal_frequencies"] = r.a2_ok;
  j["equitable"] = r.a3_ok;
  j["equitable_worst_violation"] = r.a3_worst_violation;
  j["tolerance_weights"] = r.tol_weights;
  j["no_submanifold_ok"] = r.no_submanifold_ok;
  json pm = json::array();
  for (const auto& p : r.per_pair_margins)
    pm.push_back({{"clusters", {p.first + 1, p.second + 1}},
                  {"margin", p.margin},
                  {"passes", p.passes}});
  j["pair_margins"] = pm;
  return j;
}

inline void print_report(const StabilityReport& r, std::ostream& out) {
  print_checks(r.checks, out);
  if (r.m_matrix) {
    const auto& t = *r.m_matrix;
    out << "\nS-matrix certificate\n";
    for (std::size_t k = 0; k < t.lambda_max.size(); ++k) {
      if (t.intra.blocks[k].rows() == 0) {
        out << "  cluster " << k + 1 << ": singleton, no intra coordinates\n";
        continue;
      }
      out << "  cluster " << k + 1 << ": |J_k| = " << num(t.intra.norms[k])
          << ", 1/lambda_max(X_k) = " << num(1.0 / t.lambda_max[k])
          << ", Lyapunov residual " << num(t.lyapunov_residual[k]) << "\n";
    }
    out << "  gamma:\n" << matrix_text(t.gamma.gamma);
    out << "  S:\n" << matrix_text(t.s);
    out << "  leading minors:";
    for (double d : t.m_test.leading_minors) out << " " << num(d);
    out << "\n  verdict: " << (t.is_m_matrix ? "stable (S is an M-matrix)"
                                              : "inconclusive (S is not an M-matrix)")
        << "\n";
  }
  if (r.frequency) {
    const auto& t = *r.frequency;
    out << "\nfrequency certificate\n";
    out << "  omega_bar = " << num(t.omega_bar) << ", a_bar = " << num(t.a_bar)
        << ", regime " << to_string(t.regime) << (t.swapped ? " (clusters relabelled)" : "")
        << "\n";
    out << "  |J_inter| = " << num(t.j_inter_norm) << ", |J_intra| = " << num(t.j_intra_norm)
        << ", lambda_max(X) = " << num(t.lambda_max_x) << "\n";
    if (t.regime == Regime::kLimitCycle)
      out << "  lhs = " << num(t.lhs) << ", rhs = " << num(t.rhs) << "\n  verdict: "
          << (t.holds ? "stable" : "inconclusive") << "\n";
    else
      out << "  verdict: not applicable outside the limit-cycle regime\n";
  }
  if (r.homogeneous) {
    out << "\nhomogeneous-cluster certificate\n  alpha = " << num(r.homogeneous->alpha)
        << ", |J_intra - alpha I| = " << num(r.homogeneous->deviation) << "\n  verdict: "
        << (r.homogeneous->holds ? "stable" : "not applicable") << "\n";
  }
  if (r.floquet) {
    const auto& f = *r.floquet;
    out << "\nFloquet analysis\n";
    if (f.equilibrium_fallback)
      out << "  no periodic orbit (" << to_string(f.regime)
          << "); frozen linearization at the locked offset\n";
    else
      out << "  period " << num(f.period) << ", max |mu| = " << num(f.max_magnitude) << "\n";
    out << "  max exponent " << num(f.max_exponent) << "\n  verdict: "
        << (f.stable ? "stable" : "unstable") << "\n";
  }
  if (!r.skipped.empty()) out << "\nnote: " << r.skipped << "\n";
  out << "\ncertified stable: " << (r.certified() ? "yes" : "no") << "\n";
}

inline json report_json(const StabilityReport& r) {
  json j;
  j["checks"] = checks_json(r.checks);
  if (r.m_matrix) {
    const auto& t = *r.m_matrix;
    json c;
    json lam = json::array(), res = json::array(), norms = json::array();
    for (std::size_t k = 0; k < t.lambda_max.size(); ++k) {
      lam.push_back(t.lambda_max[k]);
      res.push_back(t.lyapunov_residual[k]);
      norms.push_back(t.intra.norms[k]);
    }
    c["lambda_max_x"] = lam;
    c["lyapunov_residual"] = res;
    c["j_intra_norms"] = norms;
    c["gamma"] = matrix_json(t.gamma.gamma);
    c["s"] = matrix_json(t.s);
    c["leading_minors"] = t.m_test.leading_minors;
    c["holds"] = t.is_m_matrix;
    j["m_matrix"] = c;
  }
  if (r.frequency) {
    const auto& t = *r.frequency;
    j["frequency"] = {{"omega_bar", t.omega_bar},
                      {"a_bar", t.a_bar},
                      {"regime", to_string(t.regime)},
                      {"j_inter_norm", t.j_inter_norm},
                      {"j_intra_norm", t.j_intra_norm},
                      {"lambda_max_x", t.lambda_max_x},
                      {"lhs", number_json(t.lhs)},
                      {"rhs", number_json(t.rhs)},
                      {"holds", t.holds}};
  }
  if (r.homogeneous)
    j["homogeneous"] = {{"alpha", r.homogeneous->alpha},
                        {"deviation", r.homogeneous->deviation},
                        {"holds", r.homogeneous->holds}};
  if (r.floquet) {
    const auto& f = *r.floquet;
    json mags = json::array();
    for (Index k = 0; k < f.magnitudes.size(); ++k) mags.push_back(f.magnitudes(k));
    j["floquet"] = {{"regime", to_string(f.regime)},
                    {"equilibrium_fallback", f.equilibrium_fallback},
                    {"period", f.period},
                    {"multiplier_magnitudes", mags},
                    {"max_exponent", number_json(f.max_exponent)},
                    {"stable", f.stable}};
  }
  j["certified"] = r.certified();
  return j;
}

inline void dump_structure(const Network& net, const Partition& part,
                           const AnalysisOptions& opt, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const SpanningStructure s(net, part);
  write_matrix_csv(dir / "incidence.csv", s.incidence());
  write_matrix_csv(dir / "tree_incidence.csv", s.tree_incidence());
  {
    std::ofstream f(dir / "tree_edges.csv");
    f << "kind,i,j\n";
    for (const auto& b : s.clusters())
      for (const Edge& e : b.tree) f << "intra," << e.source + 1 << "," << e.sink + 1 << "\n";
    for (const Edge& e : s.inter_edges())
      f << "inter," << e.source + 1 << "," << e.sink + 1 << "\n";
  }
  for (Index k = 0; k < part.cluster_count(); ++k)
    write_matrix_csv(dir / ("t_intra_" + std::to_string(k + 1) + ".csv"), s.cluster(k).t_intra);
  const auto t1 = theorem1_check(net, part, s.clusters(), opt.jacobian, opt.tol);
  write_matrix_csv(dir / "j_intra.csv", t1.intra.assembled);
  write_matrix_csv(dir / "s.csv", t1.s);
  for (std::size_t k = 0; k < t1.lyapunov.size(); ++k)
    write_matrix_csv(dir / ("x_" + std::to_string(k + 1) + ".csv"), t1.lyapunov[k]);
  if (part.cluster_count() == 2)
    write_matrix_csv(dir / "j_inter.csv", jacobian_inter_coefficient(net, part, s));
}

// ---------------------------------------------------------------------------

class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) : out_(&fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw InputError("cannot write '" + path + "'");
      out_ = file_.get();
    }
  }
  std::ostream& operator*() { return *out_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* out_;
};

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Stability certificates and simulation for cluster synchronization of "
               "heterogeneous Kuramoto networks"};
  app.require_subcommand(1);
  app.fallthrough();
  Common c;
  app.add_option("--seed", c.seed, "RNG seed")->capture_default_str();
  app.add_option("--dt", c.dt, "integration step (s)")->capture_default_str()
      ->check(CLI::PositiveNumber);
  app.add_option("--horizon", c.horizon, "simulated time (s)");
  app.add_option("--tol-weights", c.tol_weights,
                 "tolerance for symmetry/equitable checks (default 1e-9 (1 + max|a|))");
  app.add_option("--tol-frequency", c.tol_frequency, "tolerance for equal frequencies")
      ->capture_default_str();
  app.add_option("--tol-floquet", c.tol_floquet,
                 "Floquet stability needs every exponent below -tol")
      ->capture_default_str();
  app.add_option("--floquet-steps", c.floquet_steps, "RK4 steps per period")
      ->capture_default_str()->check(CLI::PositiveNumber);
  app.add_flag("--assume-hurwitz", c.assume_hurwitz,
               "accept asymmetric clusters whose Jacobian is numerically Hurwitz");
  app.add_option("--set", c.sets, "override a parameter, name=value (repeatable)");
  app.add_option("--alpha", c.alpha, "set alpha and every alpha<k> parameter");
  app.add_option("--beta", c.beta, "set beta and every beta<k> parameter");
  app.add_option("--omega", c.omega, "set omega and every omega<k> parameter");

  std::string file, out_path, report_path, dump_dir, summary_path;

  auto* check = app.add_subcommand("check", "validate a network and its partition");
  check->add_option("file", file, "network file")->required();

  auto* an = app.add_subcommand("analyze", "run all applicable certificates");
  an->add_option("file", file, "network file")->required();
  an->add_option("--report", report_path, "write a JSON report");
  an->add_option("--dump-structure", dump_dir, "write incidence/tree/Jacobian CSVs here");
  bool no_floquet = false;
  an->add_flag("--no-floquet", no_floquet, "skip the Floquet ground truth");

  auto* nom = app.add_subcommand("nominal", "closed-form inter-cluster trajectory as CSV");
  std::optional<double> omega_bar, a_bar;
  double x0 = 0.0, periods = 3.0;
  Index points = 1000;
  Index sweep_points = 50;
  nom->add_option("file", file, "two-cluster network file (optional)");
  nom->add_option("--omega-bar", omega_bar, "frequency difference");
  nom->add_option("--a-bar", a_bar, "inter-cluster coupling");
  nom->add_option("--x0", x0, "initial phase difference")->capture_default_str();
  nom->add_option("--points", points, "samples")->capture_default_str()
      ->check(CLI::PositiveNumber);
  nom->add_option("--periods", periods, "span in periods (limit cycle)")->capture_default_str();
  nom->add_option("--out", out_path, "CSV path (default stdout)");

  auto* sim = app.add_subcommand("simulate", "integrate the network from a perturbed start");
  Index trials = 0, every = 1;
  double perturbation = 0.01;
  sim->add_option("file", file, "network file")->required();
  sim->add_option("--out", out_path, "trajectory CSV (default stdout)");
  sim->add_option("--every", every, "record every k-th step")->capture_default_str()
      ->check(CLI::PositiveNumber);
  sim->add_option("--perturbation", perturbation, "uniform kick half-width (rad)")
      ->capture_default_str();
  sim->add_option("--trials", trials, "Monte Carlo trials (envelope CSV instead)");
  sim->add_option("--summary", summary_path, "Monte Carlo envelope CSV (with --trials)");

  auto* sw = app.add_subcommand("sweep", "certificate and Floquet verdicts over a grid");
  std::string param;
  double from = 0.0, to = 1.0;
  bool log_scale = false;
  sw->add_option("file", file, "network file")->required();
  sw->add_option("--param", param, "parameter (family) to vary")->required();
  sw->add_option("--from", from)->required();
  sw->add_option("--to", to)->required();
  sw->add_option("--points", sweep_points, "grid points")->capture_default_str()->check(CLI::PositiveNumber);
  sw->add_flag("--log", log_scale, "log-spaced grid");
  sw->add_flag("--no-floquet", no_floquet, "skip the Floquet column");
  sw->add_option("--out", out_path, "CSV path (default stdout)");

  auto* fl = app.add_subcommand("floquet", "Floquet multipliers of a two-cluster network");
  fl->add_option("file", file, "network file")->required();

  auto* sc = app.add_subcommand("scenarios", "write the bundled benchmark networks");
  std::string dir = ".";
  sc->add_option("--out", dir, "output directory")->capture_default_str();

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }
  // nominal's default point count is 1000 but sweep's is 50

  try {
    if (check->parsed()) {
      const auto l = load(file, c);
      const auto r = run_checks(l.net, l.part, c.analysis().tol);
      print_checks(r, out);
      return r.ok() ? kExitOk : kExitFailed;
    }

    if (an->parsed()) {
      const auto l = load(file, c);
      AnalysisOptions opt = c.analysis();
      opt.floquet = !no_floquet;
      const auto r = analyze(l.net, l.part, opt);
      print_report(r, out);
      if (!report_path.empty()) {
        Output o(report_path, out);
        *o << report_json(r).dump(2) << "\n";
      }
      if (!dump_dir.empty() && r.checks.ok()) dump_structure(l.net, l.part, opt, dump_dir);
      return r.checks.ok() && r.certified() ? kExitOk : kExitFailed;
    }

    if (nom->parsed()) {
      if (!file.empty()) {
        const auto l = load(file, c);
        require_invariant_manifold(l.net, l.part, c.analysis().tol);
        const auto d = two_cluster_data(l.net, l.part);
        if (!omega_bar) omega_bar = d.omega_bar;
        if (!a_bar) a_bar = d.a_bar;
      }
      if (!omega_bar || !a_bar)
        throw InputError("nominal needs a network file or both --omega-bar and --a-bar");
      const auto traj = NominalTrajectory::fit(*omega_bar, *a_bar, x0);
      const double span = traj.regime() == Regime::kLimitCycle
                              ? periods * traj.period()
                              : c.horizon.value_or(10.0);
      Output o(out_path, out);
      *o << "t,x_nom,cos_integral\n";
      for (Index k = 0; k < points; ++k) {
        const double t = points == 1 ? 0.0 : span * k / static_cast<double>(points - 1);
        const double ci = traj.regime() == Regime::kLimitCycle ? cos_integral(traj, t)
                                                               : std::nan("");
        *o << num(t) << "," << num(traj(t)) << "," << num(ci) << "\n";
      }
      return kExitOk;
    }

    if (sim->parsed()) {
      const auto l = load(file, c);
      SimConfig cfg = c.sim(10.0);
      cfg.perturbation = perturbation;
      cfg.sample_every = every;
      if (trials > 0) {
        const auto s = monte_carlo_stability(l.net, l.part, cfg, trials);
        Output o(summary_path.empty() ? out_path : summary_path, out);
        *o << "t,mean,min,max\n";
        for (std::size_t k = 0; k < s.times.size(); ++k)
          *o << num(s.times[k]) << "," << num(s.mean[k]) << "," << num(s.min[k]) << ","
             << num(s.max[k]) << "\n";
        err << "monte carlo: " << s.trials << " trials, initial mean " << num(s.initial_mean)
            << ", final mean " << num(s.final_mean) << ", final max " << num(s.final_max)
            << " -> " << (s.stable ? "stable" : "unstable") << "\n";
        return s.stable ? kExitOk : kExitFailed;
      }
      const auto blocks = build_cluster_blocks(l.net, l.part);
      auto rng = detail::trial_rng(cfg.seed, 0);
      const VectorXd theta0 = perturbed_manifold_state(l.part, cfg.perturbation, rng);
      Output o(out_path, out);
      *o << "t";
      for (Index i = 0; i < l.net.size(); ++i) *o << ",theta_" << i + 1;
      *o << ",dist_intra\n";
      integrate_observe(l.net, theta0, cfg, [&](Index, double t, const VectorXd& th) {
        *o << num(t);
        for (Index i = 0; i < th.size(); ++i) *o << "," << num(wrap_angle(th(i)));
        *o << "," << num(intra_distance(th, blocks)) << "\n";
      });
      return kExitOk;
    }

    if (sw->parsed()) {
      const NetworkModel m = [&] {
        NetworkModel mm = load_model(file);
        c.apply(mm);
        return mm;
      }();
      AnalysisOptions opt = c.analysis();
      opt.floquet = !no_floquet;
      const auto rows = sweep(m, param, sweep_grid(from, to, sweep_points, log_scale), opt);
      Output o(out_path, out);
      *o << param << ",m_matrix,m_matrix_min_minor,omega_bar,a_bar,frequency_lhs,"
                     "frequency_rhs,frequency,floquet_max_exponent,floquet_stable\n";
      for (const auto& r : rows)
        *o << num(r.value) << "," << r.m_matrix << "," << num(r.m_matrix_min_minor) << ","
           << num(r.omega_bar) << "," << num(r.a_bar) << "," << num(r.frequency_lhs) << ","
           << num(r.frequency_rhs) << "," << r.frequency << ","
           << (no_floquet ? std::string("nan") : num(r.floquet_exponent)) << ","
           << (no_floquet ? std::string("") : std::to_string(r.floquet_stable)) << "\n";
      return kExitOk;
    }

    if (fl->parsed()) {
      const auto l = load(file, c);
      FloquetOptions fo = c.analysis().floquet_options;
      fo.jacobian.assert_hurwitz = c.assume_hurwitz;
      const auto f = floquet_two_cluster(l.net, l.part, fo);
      out << "regime: " << to_string(f.regime) << "\n";
      if (f.equilibrium_fallback) {
        out << "no periodic orbit; eigenvalues of the frozen linearization:\n";
      } else {
        out << "period: " << num(f.period) << "\nmultipliers:\n";
      }
      for (Index k = 0; k < f.multipliers.size(); ++k)
        out << "  " << num(f.multipliers(k).real()) << (f.multipliers(k).imag() < 0 ? " - " : " + ")
            << num(std::abs(f.multipliers(k).imag())) << "i  |" << num(f.magnitudes(k))
            << "|\n";
      out << "max exponent: " << num(f.max_exponent) << "\nstable: "
          << (f.stable ? "yes" : "no") << "\n";
      return f.stable ? kExitOk : kExitFailed;
    }

    if (sc->parsed()) {
      std::filesystem::create_directories(dir);
      for (const auto& s : scenarios::all()) {
        const auto path = std::filesystem::path(dir) / s.file;
        std::ofstream f(path);
        if (!f) throw InputError("cannot write '" + path.string() + "'");
        f << format_model(s.model, "Bundled scenario " + s.file);
        out << path.string() << "\n";
      }
      return kExitOk;
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const UnsupportedError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const SimulationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailed;
  } catch (const InvariantError& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitFailed;
  }
  return kExitInput;
}

inline int run(int argc, char** argv, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(std::move(args), out, err);
}

}  // namespace clustersync::cli
