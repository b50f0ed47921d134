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

#include <cmath>

#include <gtest/gtest.h>

#include "clustersync/nominal.hpp"
#include "oracles.hpp"

namespace cs = clustersync;
using cs::Index;

namespace {

/// Largest wrapped gap between x_nom and an RK4 reference over span seconds.
double max_error_vs_rk4(double w, double a, double x0, double span, double h = 1e-3) {
  const auto traj = cs::NominalTrajectory::fit(w, a, x0);
  const Index steps = static_cast<Index>(std::ceil(span / h));
  const auto ref = oracle::rk4_scalar([&](double x) { return w - a * std::sin(x); }, x0, h, steps);
  double worst = 0;
  for (Index k = 0; k <= steps; ++k)
    worst = std::max(worst, std::abs(cs::wrap_angle(traj(k * h) - ref[k])));
  return worst;
}

}  // namespace

TEST(Regime, Classification) {
  EXPECT_EQ(cs::classify_regime(6, 2), cs::Regime::kLimitCycle);
  EXPECT_EQ(cs::classify_regime(1, 2), cs::Regime::kPhaseLocked);
  EXPECT_EQ(cs::classify_regime(2, 2), cs::Regime::kCritical);
  EXPECT_EQ(cs::classify_regime(2, 2 * (1 + 1e-14)), cs::Regime::kCritical);
  EXPECT_EQ(cs::classify_regime(0, 0), cs::Regime::kPhaseLocked);
  EXPECT_EQ(cs::to_string(cs::Regime::kLimitCycle), "limit-cycle");
  EXPECT_THROW(cs::NominalTrajectory::fit(-1, 1, 0), cs::InputError);
}

TEST(Nominal, MatchesRk4InEveryRegime) {
  struct Case { double w, a, x0, span; };
  for (const Case& c : {Case{6, 2, 0, 5}, Case{10, 1, 0.3, 3}, Case{3, 2.9, 0, 30},
                        Case{3, 2.9, -3.0, 30}, Case{6, 2, 3.14159, 5}, Case{5, 0, 1, 4},
                        Case{1, 2, 0, 10}, Case{1, 2, 2.5, 10}, Case{1, 2, -2.0, 10},
                        Case{1, 2, 3.0, 10}, Case{2, 2, 0, 10}, Case{2, 2, -2.5, 10},
                        Case{2, 2, 2.0, 10}, Case{0, 1.5, 2.0, 10}}) {
    EXPECT_LE(max_error_vs_rk4(c.w, c.a, c.x0, c.span, 1e-3), 1e-8)
        << c.w << " " << c.a << " " << c.x0;
  }
}

TEST(Nominal, InitialConditionIsMatched) {
  for (double x0 : {-3.0, -1.0, 0.0, 0.5, 2.0, M_PI}) {
    EXPECT_NEAR(cs::wrap_angle(cs::NominalTrajectory::fit(6, 2, x0)(0) - x0), 0, 1e-12);
    EXPECT_NEAR(cs::wrap_angle(cs::NominalTrajectory::fit(1, 2, x0)(0) - x0), 0, 1e-12);
    EXPECT_NEAR(cs::wrap_angle(cs::NominalTrajectory::fit(2, 2, x0)(0) - x0), 0, 1e-12);
  }
}

TEST(Nominal, PeriodMatchesQuadrature) {
  for (auto [w, a] : {std::pair{6.0, 2.0}, {10.0, 1.0}, {3.0, 2.9}}) {
    const auto traj = cs::NominalTrajectory::fit(w, a, 0);
    EXPECT_NEAR(traj.period(), oracle::rotation_period(w, a), 1e-10);
    // x advances by exactly one turn per period
    EXPECT_NEAR(traj.unwrapped(traj.period()) - traj.unwrapped(0), 2 * M_PI, 1e-9);
    EXPECT_NEAR(std::abs(traj(traj.first_pi_crossing())), M_PI, 1e-9);
  }
  EXPECT_THROW(cs::NominalTrajectory::fit(1, 2, 0).period(), cs::UnsupportedError);
}

TEST(Nominal, UnwrappedIsContinuous) {
  const auto traj = cs::NominalTrajectory::fit(3, 2.9, 0.2);
  double prev = traj.unwrapped(0);
  for (int k = 1; k <= 20000; ++k) {
    const double v = traj.unwrapped(k * 1e-3);
    EXPECT_LT(std::abs(v - prev), 6 * 1e-3 + 1e-12);
    EXPECT_GE(v, prev - 1e-12);
    prev = v;
  }
}

TEST(Nominal, LockedLimit) {
  // phase locking towards 2 atan((a - sqrt(a^2 - w^2)) / w)
  const double expected = 2 * std::atan((2 - std::sqrt(3.0)) / 1);
  for (double x0 : {0.0, 1.0, -2.0, 3.0}) {
    const auto traj = cs::NominalTrajectory::fit(1, 2, x0);
    EXPECT_NEAR(traj.locked_limit(), expected, 1e-15);
    EXPECT_NEAR(traj(60), expected, 1e-12) << x0;
  }
  EXPECT_NEAR(cs::NominalTrajectory::fit(2, 2, 0)(1e6), M_PI / 2, 1e-5);
  EXPECT_NEAR(expected, std::asin(0.5), 1e-15);  // sin x* = w / a
}

TEST(Nominal, EquilibriumStartsStayPut) {
  const double xs = std::asin(0.5);
  EXPECT_NEAR(cs::NominalTrajectory::fit(1, 2, xs)(5), xs, 1e-12);
  EXPECT_NEAR(cs::NominalTrajectory::fit(2, 2, M_PI / 2)(5), M_PI / 2, 1e-12);
}

TEST(Nominal, TwoNodeDecayClosedForm) {
  // w = 0: tan(x/2) = tan(x0/2) exp(-a t)
  const double a = 1.3, x0 = 2.2;
  const auto traj = cs::NominalTrajectory::fit(0, a, x0);
  for (double t : {0.0, 0.5, 2.0, 7.0})
    EXPECT_NEAR(traj(t), 2 * std::atan(std::tan(x0 / 2) * std::exp(-a * t)), 1e-12);
}

TEST(CosIntegral, ClosedFormMatchesQuadrature) {
  for (auto [w, a] : {std::pair{6.0, 2.0}, {10.0, 1.0}, {3.0, 2.9}}) {
    const auto traj = cs::NominalTrajectory::fit(w, a, 0.4);
    for (double t : {0.3, 1.7, 4.0}) {
      const double q = oracle::trapezoid([&](double s) { return std::cos(traj(s)); }, 0, t,
                                         200000);
      EXPECT_NEAR(cs::cos_integral(traj, t), q, 1e-8);
    }
  }
}

TEST(CosIntegral, BoundHoldsAndIsAttained) {
  for (auto [w, a] : {std::pair{6.0, 2.0}, {10.0, 1.0}, {3.0, 2.9}}) {
    // starting at sin x = -1 the integral sweeps its full range
    const auto traj = cs::NominalTrajectory::fit(w, a, -M_PI / 2);
    const double bound = cs::cos_integral_bound(w, a);
    double best = 0;
    for (int k = 0; k <= 10000; ++k) {
      const double v = std::abs(cs::cos_integral(traj, 3 * traj.period() * k / 10000.0));
      EXPECT_LE(v, bound * (1 + 1e-12));
      best = std::max(best, v);
    }
    EXPECT_GT(best, 0.99 * bound);  // the bound is tight
  }
  EXPECT_THROW(cs::cos_integral_bound(1, 2), cs::UnsupportedError);
  EXPECT_DOUBLE_EQ(cs::cos_integral_bound(4, 0), 0.5);
}

TEST(CosIntegral, ZeroAverageOverAPeriod) {
  for (auto [w, a] : {std::pair{6.0, 2.0}, {10.0, 1.0}, {3.0, 2.9}}) {
    const auto traj = cs::NominalTrajectory::fit(w, a, 1.0);
    EXPECT_NEAR(cs::cos_integral(traj, traj.period()), 0, 1e-8);
    EXPECT_NEAR(oracle::trapezoid([&](double s) { return std::cos(traj(s)); }, 0,
                                  traj.period(), 20000),
                0, 1e-8);
  }
}

TEST(Nominal, PhaseAverageIsNotZero) {
  // The time average of the wrapped phase over a period is
  //   (1/T) int_{-pi}^{pi} x / (w - a sin x) dx,
  // which is positive for a > 0: the orbit lingers near x = pi/2.
  const double w = 6, a = 2;
  const auto traj = cs::NominalTrajectory::fit(w, a, 0);
  const double t = traj.period();
  // split at the wrap so the trapezoid rule sees smooth integrands
  const double tc = traj.first_pi_crossing();
  const double avg_time =
      (oracle::trapezoid([&](double s) { return traj.unwrapped(s); }, 0, tc, 200000) +
       oracle::trapezoid([&](double s) { return traj.unwrapped(s) - 2 * M_PI; }, tc, t, 200000)) /
      t;
  const double avg_phase =
      oracle::trapezoid([&](double x) { return x / (w - a * std::sin(x)); }, -M_PI, M_PI, 200000) /
      t;
  EXPECT_NEAR(avg_time, avg_phase, 1e-6);
  EXPECT_GT(avg_time, 0.05);
}

TEST(Nominal, RateMatchesVectorField) {
  const auto traj = cs::NominalTrajectory::fit(6, 2, 0.3);
  for (double t : {0.1, 0.7, 1.3}) {
    const double fd = (traj.unwrapped(t + 1e-6) - traj.unwrapped(t - 1e-6)) / 2e-6;
    EXPECT_NEAR(traj.rate(t), fd, 1e-6);
  }
}
