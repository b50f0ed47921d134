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

// Closed-form solution of the inter-cluster phase difference of a
// two-cluster network evolving on its synchronization manifold:
//
//   dx/dt = w - a sin(x),   w = omega_bar >= 0,  a = a_bar >= 0.
//
// With u = tan(x/2) this is the Riccati equation
//   du/dt = (w/2) (u^2 - 2 (a/w) u + 1),
// whose solutions split into three regimes: rotation (w > a), the critical
// case (w = a), and phase locking (w < a).

#pragma once

#include <cmath>
#include <limits>
#include <string>

#include "clustersync/common.hpp"

namespace clustersync {

enum class Regime { kLimitCycle, kCritical, kPhaseLocked };

inline std::string to_string(Regime r) {
  switch (r) {
    case Regime::kLimitCycle: return "limit-cycle";
    case Regime::kCritical: return "critical";
    case Regime::kPhaseLocked: return "phase-locked";
  }
  return "?";
}

inline constexpr double kCriticalRelTol = 1e-12;

inline Regime classify_regime(double omega_bar, double a_bar) {
  const double scale = std::max(omega_bar, a_bar);
  if (scale == 0.0) return Regime::kPhaseLocked;
  if (std::abs(omega_bar - a_bar) <= kCriticalRelTol * scale) return Regime::kCritical;
  return omega_bar > a_bar ? Regime::kLimitCycle : Regime::kPhaseLocked;
}

class NominalTrajectory {
 public:
  /// Fits the phase constant tau so that x_nom(0) = x0 (x0 is wrapped first).
  static NominalTrajectory fit(double omega_bar, double a_bar, double x0) {
    if (!(omega_bar >= 0.0) || !(a_bar >= 0.0))
      throw InputError("nominal trajectory needs omega_bar >= 0 and a_bar >= 0");
    NominalTrajectory n;
    n.w_ = omega_bar;
    n.a_ = a_bar;
    n.x0_ = wrap_angle(x0);
    n.regime_ = classify_regime(omega_bar, a_bar);
    switch (n.regime_) {
      case Regime::kLimitCycle: n.fit_rotation(); break;
      case Regime::kCritical: n.fit_critical(); break;
      case Regime::kPhaseLocked: n.fit_locked(); break;
    }
    return n;
  }

  double omega_bar() const { return w_; }
  double a_bar() const { return a_; }
  double x0() const { return x0_; }
  double tau() const { return tau_; }
  Regime regime() const { return regime_; }

  /// 2 pi / sqrt(w^2 - a^2); limit-cycle regime only.
  double period() const {
    if (regime_ != Regime::kLimitCycle)
      throw UnsupportedError("period is defined only in the limit-cycle regime");
    return kTwoPi / s_;
  }

  /// First time t0 >= 0 with x_nom(t0) = pi; limit-cycle regime only.
  double first_pi_crossing() const {
    const double t = -tau_ + kPi / s_;
    return t - std::floor(t / period()) * period();
  }

  /// x_nom(t) wrapped to (-pi, pi]; exactly pi at the crossings.
  double operator()(double t) const {
    switch (regime_) {
      case Regime::kLimitCycle:
      case Regime::kCritical: return wrap_angle(unwrapped(t));
      case Regime::kPhaseLocked: return locked_value_at(t);
    }
    return 0.0;
  }

  /// Continuous (not wrapped) representation with unwrapped(0) = x0.
  /// The phase-locked solution never completes a turn, so it is returned
  /// on its branch.
  double unwrapped(double t) const {
    switch (regime_) {
      case Regime::kLimitCycle: return rotation_raw(t) + offset_;
      case Regime::kCritical:
        if (equilibrium_) return x0_;
        return critical_raw(t) + offset_;
      case Regime::kPhaseLocked: return locked_value_at(t);
    }
    return 0.0;
  }

  /// Right-hand side w - a sin(x_nom(t)).
  double rate(double t) const { return w_ - a_ * std::sin((*this)(t)); }

  /// Limit value reached as t -> infinity (critical and phase-locked).
  double locked_limit() const {
    if (regime_ == Regime::kLimitCycle)
      throw UnsupportedError("no limit value in the limit-cycle regime");
    if (regime_ == Regime::kCritical) return kPi / 2.0;
    if (w_ == 0.0) return (a_ == 0.0 || std::cos(x0_ / 2.0) == 0.0) ? x0_ : 0.0;
    return 2.0 * std::atan((a_ - r_) / w_);
  }

 private:
  enum class LockedBranch { kTanh, kCoth, kEquilibrium, kPureDecay };

  void fit_rotation() {
    s_ = std::sqrt((w_ - a_) * (w_ + a_));
    // tan(s tau / 2) = (w tan(x0/2) - a) / s on the principal branch
    const double c = std::cos(x0_ / 2.0), sn = std::sin(x0_ / 2.0);
    const double psi = std::atan2(w_ * sn - a_ * c, s_ * c);
    double phi = psi;
    if (phi > kPi / 2.0) phi -= kPi;
    if (phi <= -kPi / 2.0) phi += kPi;
    tau_ = 2.0 * phi / s_;
    offset_ = 0.0;
    offset_ = x0_ - rotation_raw(0.0);
    offset_ = kTwoPi * std::round(offset_ / kTwoPi);
  }

  double rotation_raw(double t) const {
    const double phi = s_ * (t + tau_) / 2.0;
    const double k = std::round(phi / kPi);
    const double psi = phi - k * kPi;
    return 2.0 * std::atan((a_ + s_ * std::tan(psi)) / w_) + kTwoPi * k;
  }

  void fit_critical() {
    const double c = std::cos(x0_ / 2.0), sn = std::sin(x0_ / 2.0);
    if (std::abs(c - sn) <= 1e-15) {
      equilibrium_ = true;
      return;
    }
    // a t = 2 sin(x/2) / (cos(x/2) - sin(x/2)) + tau
    tau_ = -2.0 * sn / (c - sn);
    offset_ = 0.0;
    offset_ = kTwoPi * std::round((x0_ - critical_raw(0.0)) / kTwoPi);
  }

  double critical_raw(double t) const {
    const double w = a_ * t - tau_;
    return 2.0 * std::atan2(w, w + 2.0);
  }

  void fit_locked() {
    if (w_ == 0.0) {
      branch_ = LockedBranch::kPureDecay;
      return;
    }
    r_ = std::sqrt((a_ - w_) * (a_ + w_));
    const double c = std::cos(x0_ / 2.0), sn = std::sin(x0_ / 2.0);
    // q = (a - w tan(x0/2)) / r, written to stay finite at x0 = pi
    const double num = a_ * c - w_ * sn;
    const double den = r_ * c;
    if (std::abs(std::abs(num) - std::abs(den)) <= 1e-15 * (std::abs(num) + std::abs(den))) {
      branch_ = LockedBranch::kEquilibrium;
      return;
    }
    if (std::abs(num) < std::abs(den)) {
      branch_ = LockedBranch::kTanh;
      tau_ = 2.0 * std::atanh(num / den) / r_;
    } else {
      branch_ = LockedBranch::kCoth;
      tau_ = 2.0 * std::atanh(den / num) / r_;
    }
  }

  double locked_value_at(double t) const {
    switch (branch_) {
      case LockedBranch::kEquilibrium: return x0_;
      case LockedBranch::kPureDecay: {
        // dx/dt = -a sin x  =>  tan(x/2) = tan(x0/2) e^{-a t}
        const double c = std::cos(x0_ / 2.0), sn = std::sin(x0_ / 2.0);
        return wrap_angle(2.0 * std::atan2(sn * std::exp(-a_ * t), c));
      }
      case LockedBranch::kTanh: {
        const double u = (a_ - r_ * std::tanh(r_ * (t + tau_) / 2.0)) / w_;
        return wrap_angle(2.0 * std::atan(u));
      }
      case LockedBranch::kCoth: {
        const double th = std::tanh(r_ * (t + tau_) / 2.0);
        if (th == 0.0) return kPi;
        const double u = (a_ - r_ / th) / w_;
        return wrap_angle(2.0 * std::atan(u));
      }
    }
    return 0.0;
  }

  double w_ = 0.0, a_ = 0.0, x0_ = 0.0, tau_ = 0.0;
  double s_ = 0.0, r_ = 0.0, offset_ = 0.0;
  bool equilibrium_ = false;
  Regime regime_ = Regime::kLimitCycle;
  LockedBranch branch_ = LockedBranch::kTanh;
};

/// (1/a) log((w + a) / (w - a)); tends to 2/w as a -> 0.
inline double cos_integral_bound(double omega_bar, double a_bar) {
  if (!(omega_bar > a_bar))
    throw UnsupportedError("cos-integral bound needs omega_bar > a_bar");
  if (a_bar == 0.0) return 2.0 / omega_bar;
  return std::log1p(2.0 * a_bar / (omega_bar - a_bar)) / a_bar;
}

/// Closed form of int_0^t cos(x_nom(s)) ds,
///   (1/a) log((w - a sin x(0)) / (w - a sin x(t))).
inline double cos_integral(const NominalTrajectory& traj, double t) {
  const double w = traj.omega_bar(), a = traj.a_bar();
  if (a == 0.0) return (std::sin(w * t + traj.x0()) - std::sin(traj.x0())) / w;
  return std::log((w - a * std::sin(traj.x0())) / (w - a * std::sin(traj(t)))) / a;
}

}  // namespace clustersync
