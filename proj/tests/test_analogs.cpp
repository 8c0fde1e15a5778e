#include <cmath>

#include <gtest/gtest.h>

#include "adiabat/analogs.hpp"
#include "adiabat/errors.hpp"

using namespace adiabat;
using namespace adiabat::analogs;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST(Pendulum, AdiabaticAndSuddenLimits) {
  const double eps = 0.01, span = 25 * eps;
  const double slow = 2 * span / (0.01 * eps * eps);
  EXPECT_GE(pendulum_sweep(linear_frequency_sweep(1, 1, 0.02, span, slow), slow).transfer_fraction, 0.99);
  EXPECT_LE(pendulum_sweep(linear_frequency_sweep(1, 1, 0.02, span, 1e-3), 1e-3).transfer_fraction, 0.05);
}

TEST(Pendulum, LadderMonotoneAndJobsInvariant) {
  const auto a = pendulum_rate_ladder({20, 5, 1.25}, 0.02, 1);
  const auto b = pendulum_rate_ladder({20, 5, 1.25}, 0.02, 3);
  EXPECT_TRUE(a.monotone);
  EXPECT_EQ(a.fractions, b.fractions);
}

TEST(Pendulum, FrozenEnergyConserved) {
  EXPECT_LT(pendulum_energy_drift(1.0, 1.1, 1.0, 0.02, 1e4), 1e-6);
}

TEST(Pendulum, Validation) {
  EXPECT_THROW(linear_frequency_sweep(1, 1, 0.02, 2.0, 10.0), ArgumentError);
  PendulumSystem s;
  EXPECT_THROW(pendulum_sweep(s, 1.0), ArgumentError);
}

TEST(TwoLevel, LandauZenerOracle) {
  // External oracle: adiabatic conversion 1 - exp(-pi eps^2 / alpha).
  const std::pair<double, double> pairs[] = {{0.5, 1}, {0.3, 0.2}, {0.2, 0.1}, {1, 4}, {0.1, 0.05}, {0.15, 1}};
  for (const auto &[e, a] : pairs) {
    const auto r = two_level_sweep({e, a});
    const double lz = 1 - std::exp(-kPi * e * e / a);
    EXPECT_NEAR(r.conversion, lz, 0.02 * lz) << e << " " << a;
    EXPECT_NEAR(r.conversion + r.survival, 1.0, 1e-15);
  }
}

TEST(TwoLevel, ZeroCouplingNeverConverts) {
  EXPECT_NEAR(two_level_sweep({0.0, 1.0}).flavor_conversion, 0.0, 1e-15);
}

TEST(Rectangle, PhasePiAndHalfLoopSquare) {
  const auto r = rectangular_loop_phase(0.5, 10, 2000);
  EXPECT_NEAR(std::abs(r.wilson_phase), kPi, 1e-3);
  EXPECT_LT(r.half_loop_error, 1e-2);
  EXPECT_FALSE(r.regime_warning);
}

TEST(Rectangle, ShiftedLoopHasNoPhase) {
  const auto r = rectangular_loop_phase(0.5, 10, 2000, 30.0);
  EXPECT_NEAR(r.wilson_phase, 0.0, 1e-12);
}

TEST(Rectangle, RegimeWarning) {
  EXPECT_TRUE(rectangular_loop_phase(1.0, 5.0, 200, 0.0, false).regime_warning);
}

TEST(Celestial, KeplerLimitExact) {
  CelestialConfig c;
  c.M_j = 0.0;
  EXPECT_NEAR(celestial_frozen_period(c, 0.3) / (2 * kPi) - 1.0, 0.0, 1e-8);
  const auto inv = celestial_kepler_invariants(c, 100);
  EXPECT_LT(inv.energy_drift, 1e-10);
  EXPECT_LT(inv.angular_momentum_drift, 1e-10);
}

TEST(Celestial, ForceRatio) {
  const double fr = force_ratio(CelestialConfig{});
  EXPECT_NEAR(fr, 1e-3 / (4.2 * 4.2), 1e-15);
  EXPECT_LT(fr / 5e-5, 1.3);
  EXPECT_GT(fr / 5e-5, 1 / 1.3);
}

TEST(Celestial, FrozenShiftGolden) {
  // Frozen from a 1e-13 tolerance run.
  const CelestialConfig c;
  EXPECT_NEAR(celestial_frozen_period(c, 0.7) / c.kepler_period() - 1.0, -1.256112443838e-04, 1e-11);
}

TEST(Celestial, ShiftHalvesWithMassAndIsMirrorSymmetric) {
  CelestialConfig c, h;
  h.M_j = 0.5e-3;
  const double T0 = c.kepler_period();
  const double s = celestial_frozen_period(c, 0.7) / T0 - 1, sh = celestial_frozen_period(h, 0.7) / T0 - 1;
  EXPECT_NEAR(sh / s, 0.5, 0.01);
  EXPECT_NEAR(celestial_frozen_period(c, -0.7), celestial_frozen_period(c, 0.7), 1e-12);
}

TEST(Celestial, ResidualVanishesWithoutPerturber) {
  CelestialConfig c;
  c.M_j = 0.0;
  EXPECT_LT(std::abs(celestial_adiabatic_residual(c, 2).residual), 1e-8);
}

TEST(Celestial, PaperResidualBelowDynamical) {
  const auto r = celestial_adiabatic_residual(CelestialConfig{}, 2);
  EXPECT_LT(std::abs(r.residual_per_cycle), 0.2 * std::abs(r.dynamical_per_cycle));
  EXPECT_LT(r.refinement_change, 1e-7);
}

TEST(Celestial, ExaggeratedResidualGolden) {
  // Frozen from a 1e-13 tolerance run.
  CelestialConfig c;
  c.M_j = 1e-2;
  c.R_j = 3.0;
  const auto r = celestial_adiabatic_residual(c, 2);
  EXPECT_NEAR(r.residual, 6.728507361227e-02, 1e-8);
  EXPECT_GT(std::abs(r.residual), 1e3 * r.refinement_change);
}

TEST(Celestial, Validation) {
  CelestialConfig c;
  c.R_j = 0.5;
  EXPECT_THROW(c.validate(), ArgumentError);
  c = CelestialConfig{};
  c.eccentricity = 1.0;
  EXPECT_THROW(celestial_frozen_period(c, 0.0), ArgumentError);
}
