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

// Numerical ground truth: fixed-step integration of
//
//   dtheta_i/dt = omega_i + sum_j a_ij sin(theta_j - theta_i),
//
// distance to the synchronization manifold, Monte Carlo perturbation
// experiments, the rotating-pattern invariant set of the band network, and
// Floquet multipliers of the linearized two-cluster dynamics.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "clustersync/common.hpp"
#include "clustersync/graph_algebra.hpp"
#include "clustersync/linalg.hpp"
#include "clustersync/network.hpp"
#include "clustersync/nominal.hpp"
#include "clustersync/stability.hpp"

namespace clustersync {

enum class Integrator { kRK4, kEuler };

struct SimConfig {
  double dt = 1e-3;
  double horizon = 10.0;
  Integrator integrator = Integrator::kRK4;
  std::uint64_t seed = 1;
  double perturbation = 0.01;  ///< half-width of the uniform kick, rad
  Index sample_every = 1;      ///< record every k-th step

  void validate() const {
    if (!(dt > 0.0)) throw InputError("dt must be positive");
    if (!(horizon >= 0.0)) throw InputError("horizon must be nonnegative");
    if (sample_every < 1) throw InputError("sample_every must be >= 1");
    if (!(perturbation >= 0.0)) throw InputError("perturbation must be nonnegative");
  }
  Index steps() const { return static_cast<Index>(std::llround(horizon / dt)); }
};

class SimulationError : public std::runtime_error {
 public:
  SimulationError(const std::string& what, Index step)
      : std::runtime_error(what + " at step " + std::to_string(step)), step_(step) {}
  Index step() const { return step_; }

 private:
  Index step_;
};

/// Sparse right-hand side of the Kuramoto model.
class KuramotoSystem {
 public:
  explicit KuramotoSystem(const Network& net) : omega_(net.omega()) {
    const Index n = net.size();
    neighbours_.resize(n);
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j)
        if (i != j && net.weight(i, j) != 0.0)
          neighbours_[i].push_back({j, net.weight(i, j)});
  }

  Index size() const { return omega_.size(); }

  void rhs(const VectorXd& theta, VectorXd& out) const {
    out = omega_;
    for (Index i = 0; i < size(); ++i) {
      double acc = 0.0;
      for (const auto& [j, w] : neighbours_[i]) acc += w * std::sin(theta(j) - theta(i));
      out(i) += acc;
    }
  }

 private:
  VectorXd omega_;
  std::vector<std::vector<std::pair<Index, double>>> neighbours_;
};

/// Steps the model and calls `observe(step, t, theta)` on every recorded
/// sample, including t = 0. Phases are kept unwrapped.
template <class Observer>
void integrate_observe(const Network& net, const VectorXd& theta0, const SimConfig& cfg,
                       Observer&& observe) {
  cfg.validate();
  if (theta0.size() != net.size())
    throw InputError("initial condition has " + std::to_string(theta0.size()) +
                     " entries, expected " + std::to_string(net.size()));
  const KuramotoSystem sys(net);
  const Index steps = cfg.steps();
  const double h = cfg.dt;
  VectorXd th = theta0, k1, k2, k3, k4, tmp;
  observe(Index{0}, 0.0, th);
  for (Index s = 1; s <= steps; ++s) {
    sys.rhs(th, k1);
    if (cfg.integrator == Integrator::kEuler) {
      th += h * k1;
    } else {
      tmp = th + 0.5 * h * k1;
      sys.rhs(tmp, k2);
      tmp = th + 0.5 * h * k2;
      sys.rhs(tmp, k3);
      tmp = th + h * k3;
      sys.rhs(tmp, k4);
      th += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    if (!th.allFinite()) throw SimulationError("non-finite phase", s);
    if (s % cfg.sample_every == 0 || s == steps) observe(s, s * h, th);
  }
}

/// |x_intra| with every spanning-forest difference wrapped to (-pi, pi].
inline double intra_distance(const VectorXd& theta, std::span<const ClusterBlock> blocks) {
  double acc = 0.0;
  for (const auto& b : blocks)
    for (const Edge& e : b.tree) {
      const double d = wrap_angle(theta(e.sink) - theta(e.source));
      acc += d * d;
    }
  return std::sqrt(acc);
}

inline double intra_distance(const VectorXd& theta, const SpanningStructure& s) {
  return intra_distance(theta, s.clusters());
}

struct Trajectory {
  std::vector<double> times;
  MatrixXd phases;  ///< samples x n, unwrapped
  std::vector<double> intra_distance;

  MatrixXd wrapped_phases() const {
    return phases.unaryExpr([](double v) { return wrap_angle(v); });
  }
};

/// Integrates from theta0. The intra distance series is filled when cluster
/// blocks are supplied.
inline Trajectory integrate(const Network& net, const VectorXd& theta0, const SimConfig& cfg,
                            std::span<const ClusterBlock> blocks = {}) {
  cfg.validate();
  Trajectory tr;
  const Index samples = cfg.steps() / cfg.sample_every + 2;
  tr.phases.resize(samples, net.size());
  Index row = 0;
  integrate_observe(net, theta0, cfg, [&](Index, double t, const VectorXd& th) {
    tr.times.push_back(t);
    tr.phases.row(row++) = th.transpose();
    if (!blocks.empty()) tr.intra_distance.push_back(intra_distance(th, blocks));
  });
  tr.phases.conservativeResize(row, Eigen::NoChange);
  return tr;
}

namespace detail {

inline double pairwise_sum(std::span<const double> v) {
  if (v.size() <= 8) return std::accumulate(v.begin(), v.end(), 0.0);
  const std::size_t h = v.size() / 2;
  return pairwise_sum(v.subspan(0, h)) + pairwise_sum(v.subspan(h));
}

inline std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace detail

struct MonteCarloSummary {
  Index trials = 0;
  std::vector<double> times;
  std::vector<double> mean, min, max;  ///< distance envelope over trials
  double initial_mean = 0.0, initial_max = 0.0;
  double final_mean = 0.0, final_max = 0.0;
  double peak = 0.0;  ///< largest distance seen anywhere
  /// log(mean(t_end) / mean(t_end / 2)) / (t_end / 2): the late decay rate,
  /// comparable with the leading Floquet exponent.
  double growth_rate = 0.0;
  bool stable = false;
};

struct MonteCarloOptions {
  /// Stable iff final mean < contraction * initial mean and final max <
  /// initial max.
  double contraction = 0.1;
};

/// Runs `trials` independent simulations. `make_initial(rng)` draws an
/// initial condition and `distance(theta)` measures the distance to the set
/// under study. Trial t uses an RNG seeded from (cfg.seed, t).
template <class MakeInitial, class Distance>
MonteCarloSummary monte_carlo(const Network& net, const SimConfig& cfg, Index trials,
                              MakeInitial&& make_initial, Distance&& distance,
                              MonteCarloOptions opt = {}) {
  if (trials < 1) throw InputError("monte carlo needs at least one trial");
  std::vector<std::vector<double>> series(trials);
  std::vector<double> times;
  for (Index t = 0; t < trials; ++t) {
    auto rng = detail::trial_rng(cfg.seed, static_cast<std::uint64_t>(t));
    const VectorXd theta0 = make_initial(rng);
    auto& out = series[t];
    integrate_observe(net, theta0, cfg, [&](Index, double time, const VectorXd& th) {
      if (t == 0) times.push_back(time);
      out.push_back(distance(th));
    });
  }
  MonteCarloSummary s;
  s.trials = trials;
  s.times = times;
  const std::size_t samples = times.size();
  std::vector<double> column(trials);
  for (std::size_t k = 0; k < samples; ++k) {
    for (Index t = 0; t < trials; ++t) column[t] = series[t][k];
    s.mean.push_back(detail::pairwise_sum(column) / static_cast<double>(trials));
    s.min.push_back(*std::min_element(column.begin(), column.end()));
    s.max.push_back(*std::max_element(column.begin(), column.end()));
  }
  s.initial_mean = s.mean.front();
  s.initial_max = s.max.front();
  s.final_mean = s.mean.back();
  s.final_max = s.max.back();
  s.peak = *std::max_element(s.max.begin(), s.max.end());
  const std::size_t mid = samples / 2;
  if (samples > 2 && s.times.back() > s.times[mid])
    s.growth_rate = std::log(s.mean.back() / s.mean[mid]) / (s.times.back() - s.times[mid]);
  s.stable = s.final_mean < opt.contraction * s.initial_mean && s.final_max < s.initial_max;
  return s;
}

/// Random point of the manifold (one uniform phase per cluster) kicked by
/// independent U(-p, p) offsets per node.
template <class Rng>
VectorXd perturbed_manifold_state(const Partition& part, double perturbation, Rng& rng) {
  std::uniform_real_distribution<double> phase(-kPi, kPi);
  std::uniform_real_distribution<double> kick(-perturbation, perturbation);
  VectorXd th(part.node_count());
  for (const auto& c : part.clusters()) {
    const double base = phase(rng);
    for (Index v : c) th(v) = base;
  }
  if (perturbation > 0.0)
    for (Index v = 0; v < th.size(); ++v) th(v) += kick(rng);
  return th;
}

inline MonteCarloSummary monte_carlo_stability(const Network& net, const Partition& part,
                                               const SimConfig& cfg, Index trials,
                                               MonteCarloOptions opt = {}) {
  require_invariant_manifold(net, part);
  const auto blocks = build_cluster_blocks(net, part);
  return monte_carlo(
      net, cfg, trials,
      [&](std::mt19937_64& rng) { return perturbed_manifold_state(part, cfg.perturbation, rng); },
      [&](const VectorXd& th) { return intra_distance(th, blocks); }, opt);
}

// ---------------------------------------------------------------------------
// Band network with a rotating-pattern invariant set.
//
// 2N nodes on a ring, a_ij = w when the ring distance of i and j is at most
// 2. Odd nodes (1-based) form cluster 1, even nodes cluster 2. The set
//   theta_{i+2} = theta_i + 2 pi / N
// is invariant alongside the synchronization manifold.

inline Network band_network(Index half, double omega_odd, double omega_even,
                            double weight = 1.0) {
  if (half < 2) throw InputError("band network needs N >= 2");
  const Index n = 2 * half;
  MatrixXd a = MatrixXd::Zero(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      const Index d = std::abs(i - j);
      if (i != j && std::min(d, n - d) <= 2) a(i, j) = weight;
    }
  VectorXd omega(n);
  for (Index i = 0; i < n; ++i) omega(i) = (i % 2 == 0) ? omega_odd : omega_even;
  return Network(std::move(a), std::move(omega));
}

inline Partition band_partition(Index half) {
  std::vector<std::vector<Index>> c(2);
  for (Index i = 0; i < 2 * half; ++i) c[i % 2].push_back(i);
  return Partition(std::move(c), 2 * half);
}

/// Point of the pattern set with the given phases of nodes 1 and 2.
inline VectorXd band_pattern_state(Index half, double phase_odd, double phase_even) {
  VectorXd th(2 * half);
  for (Index i = 0; i < 2 * half; ++i)
    th(i) = (i % 2 == 0 ? phase_odd : phase_even) + kTwoPi * static_cast<double>(i / 2) /
                                                        static_cast<double>(half);
  return th;
}

/// max_i |theta_{i+2} - theta_i - 2 pi / N| (wrapped), i = 1..2N-2.
inline double pattern_deviation(const VectorXd& theta, Index half) {
  double worst = 0.0;
  const double step = kTwoPi / static_cast<double>(half);
  for (Index i = 0; i + 2 < theta.size(); ++i)
    worst = std::max(worst, std::abs(wrap_angle(theta(i + 2) - theta(i) - step)));
  return worst;
}

/// Euclidean distance to the pattern set: per parity class, the spread of
/// the wrapped offsets from the ideal pattern around their mean.
inline double pattern_distance(const VectorXd& theta, Index half) {
  double acc = 0.0;
  for (Index c = 0; c < 2; ++c) {
    std::vector<double> d;
    for (Index k = 0; k < half; ++k)
      d.push_back(wrap_angle(theta(c + 2 * k) - theta(c) -
                             kTwoPi * static_cast<double>(k) / static_cast<double>(half)));
    const double mean = std::accumulate(d.begin(), d.end(), 0.0) / static_cast<double>(half);
    for (double v : d) acc += (v - mean) * (v - mean);
  }
  return std::sqrt(acc);
}

/// Largest angular displacement of a single oscillator from the nearest
/// point of the pattern set: per parity class, half the range of the wrapped
/// offsets.
inline double pattern_distance_max(const VectorXd& theta, Index half) {
  double worst = 0.0;
  for (Index c = 0; c < 2; ++c) {
    double lo = 0.0, hi = 0.0;
    for (Index k = 0; k < half; ++k) {
      const double d = wrap_angle(theta(c + 2 * k) - theta(c) -
                                  kTwoPi * static_cast<double>(k) / static_cast<double>(half));
      lo = std::min(lo, d);
      hi = std::max(hi, d);
    }
    worst = std::max(worst, 0.5 * (hi - lo));
  }
  return worst;
}

/// Integrates the band network from a point of the pattern set and returns
/// the largest pattern deviation over the horizon.
inline double example1_invariance(Index half, const SimConfig& cfg, double omega_odd = 1.0,
                                  double omega_even = 3.0) {
  const Network net = band_network(half, omega_odd, omega_even);
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> phase(-kPi, kPi);
  const double p1 = phase(rng), p2 = phase(rng);
  double worst = 0.0;
  integrate_observe(net, band_pattern_state(half, p1, p2), cfg,
                    [&](Index, double, const VectorXd& th) {
                      worst = std::max(worst, pattern_deviation(th, half));
                    });
  return worst;
}

/// Monte Carlo around the pattern set with U(-p, p) kicks.
enum class PatternMetric { kEuclidean, kMaxAngle };

inline MonteCarloSummary example1_perturbed(Index half, const SimConfig& cfg, Index trials,
                                            double omega_odd = 1.0, double omega_even = 3.0,
                                            PatternMetric metric = PatternMetric::kEuclidean) {
  const Network net = band_network(half, omega_odd, omega_even);
  return monte_carlo(
      net, cfg, trials,
      [&](std::mt19937_64& rng) {
        std::uniform_real_distribution<double> phase(-kPi, kPi);
        std::uniform_real_distribution<double> kick(-cfg.perturbation, cfg.perturbation);
        const double p1 = phase(rng), p2 = phase(rng);
        VectorXd th = band_pattern_state(half, p1, p2);
        if (cfg.perturbation > 0.0)
          for (Index v = 0; v < th.size(); ++v) th(v) += kick(rng);
        return th;
      },
      [&](const VectorXd& th) {
        return metric == PatternMetric::kEuclidean ? pattern_distance(th, half)
                                                   : pattern_distance_max(th, half);
      });
}

// ---------------------------------------------------------------------------
// Floquet analysis of dx_intra/dt = (J_intra + cos(x_nom(t)) J_inter) x_intra.

struct FloquetOptions {
  Index steps_per_period = 10000;
  /// Stable iff every characteristic exponent log|mu| / T < -exponent_tol.
  double exponent_tol = 1e-6;
  JacobianOptions jacobian{};
};

struct FloquetResult {
  Regime regime = Regime::kLimitCycle;
  double omega_bar = 0.0;
  double a_bar = 0.0;
  /// Phase-locked or critical input: no periodic orbit, so the frozen
  /// linearization at the locked inter-cluster offset is tested instead.
  bool equilibrium_fallback = false;
  double period = 0.0;
  MatrixXd monodromy;
  Eigen::VectorXcd multipliers;
  VectorXd magnitudes;
  double max_magnitude = 0.0;
  double max_exponent = 0.0;  ///< log(max |mu|) / T, or the spectral abscissa
  bool stable = false;
};

/// Fundamental matrix of dX/dt = (A + c(t) B) X over [0, horizon] with RK4.
template <class Coefficient>
MatrixXd fundamental_matrix(const MatrixXd& a, const MatrixXd& b, Coefficient&& c,
                            double horizon, Index steps) {
  const Index d = a.rows();
  MatrixXd x = MatrixXd::Identity(d, d);
  const double h = horizon / static_cast<double>(steps);
  for (Index s = 0; s < steps; ++s) {
    const double t = s * h;
    const MatrixXd m0 = a + c(t) * b;
    const MatrixXd mh = a + c(t + 0.5 * h) * b;
    const MatrixXd m1 = a + c(t + h) * b;
    const MatrixXd k1 = m0 * x;
    const MatrixXd k2 = mh * (x + 0.5 * h * k1);
    const MatrixXd k3 = mh * (x + 0.5 * h * k2);
    const MatrixXd k4 = m1 * (x + h * k3);
    x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return x;
}

inline FloquetResult floquet_two_cluster(const Network& net, const Partition& part,
                                         FloquetOptions opt = {}) {
  if (part.cluster_count() != 2)
    throw UnsupportedError("Floquet analysis is implemented for two clusters only");
  require_invariant_manifold(net, part);
  const auto blocks = build_cluster_blocks(net, part);
  const IntraJacobian intra = jacobian_intra(net, blocks, opt.jacobian);
  const MatrixXd j_inter = jacobian_inter_coefficient(net, part, blocks);
  const auto data = two_cluster_data(net, part);
  FloquetResult r;
  r.omega_bar = data.omega_bar;
  r.a_bar = data.a_bar;
  r.regime = classify_regime(data.omega_bar, data.a_bar);
  if (r.regime != Regime::kLimitCycle) {
    r.equilibrium_fallback = true;
    const double x_lock = NominalTrajectory::fit(data.omega_bar, data.a_bar, 0.0).locked_limit();
    const MatrixXd frozen = intra.assembled + std::cos(x_lock) * j_inter;
    r.multipliers = eigenvalues(frozen);
    r.magnitudes = r.multipliers.cwiseAbs();
    r.max_exponent = spectral_abscissa(frozen);
    r.stable = r.max_exponent < -opt.exponent_tol;
    return r;
  }
  const auto nominal = NominalTrajectory::fit(data.omega_bar, data.a_bar, 0.0);
  r.period = nominal.period();
  r.monodromy = fundamental_matrix(
      intra.assembled, j_inter, [&](double t) { return std::cos(nominal(t)); }, r.period,
      opt.steps_per_period);
  if (!(std::abs(r.monodromy.determinant()) > 0.0))
    throw InvariantError("monodromy matrix is singular");
  r.multipliers = eigenvalues(r.monodromy);
  r.magnitudes = r.multipliers.cwiseAbs();
  r.max_magnitude = r.magnitudes.size() ? r.magnitudes.maxCoeff() : 0.0;
  r.max_exponent = r.magnitudes.size() ? std::log(r.max_magnitude) / r.period
                                       : -std::numeric_limits<double>::infinity();
  r.stable = r.max_exponent < -opt.exponent_tol;
  return r;
}

}  // namespace clustersync
