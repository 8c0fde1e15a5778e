#include <cmath>

#include <gtest/gtest.h>

#include "adiabat/errors.hpp"
#include "adiabat/qcore.hpp"
#include "adiabat/scattering.hpp"

using namespace adiabat;
using namespace adiabat::scattering;
using qcore::kPi;

TEST(Delta, TransferMatrixMatchesClosedForms) {
  for (double g : {0.0, 0.1, 1.0, 5.0, 1e3}) {
    const ScatteringConfig c{1.3, 0.7, 2.7, DeltaBarrier{g}};
    EXPECT_NEAR(barrier_amplitudes(barrier_matrix(c)).probability(), delta_transmission(1.3, 0.7, g), 1e-12);
    EXPECT_LT(qcore::phase_distance(reflection_phase(c), delta_reflection_phase_closed_form(1.3, 0.7, 2.7, g)), 1e-12);
  }
}

TEST(Delta, StrengthForTransmissionInverts) {
  for (double eps : {0.01, 0.2, 0.9})
    EXPECT_NEAR(delta_transmission(2.0, 1.5, delta_strength_for_transmission(2.0, 1.5, eps)), eps, 1e-14);
}

TEST(Square, TransmissionMatchesTunnellingFormula) {
  // Oracle: T = 1 / (1 + V0^2 sinh^2(kappa a) / (4 E (V0 - E))) below the top.
  const double p = 1.0, m = 1.0, V0 = 2.0, a = 0.5, E = p * p / (2 * m);
  const double kappa = std::sqrt(2 * m * (V0 - E));
  const double T = 1.0 / (1.0 + V0 * V0 * std::pow(std::sinh(kappa * a), 2) / (4 * E * (V0 - E)));
  const ScatteringConfig c{p, m, 3.0, SquareBarrier{V0, a}};
  EXPECT_NEAR(barrier_amplitudes(barrier_matrix(c)).probability(), T, 1e-12);
  EXPECT_NO_THROW(reflection_phase(c));
}

TEST(Phase, NoBarrierIsPiAndStrongBarrierAddsMinus2pX) {
  EXPECT_LT(qcore::phase_distance(reflection_phase({1.0, 1.0, 2.0, DeltaBarrier{0.0}}), kPi), 1e-14);
  const double extra = reflection_phase({1.0, 1.0, 2.0, DeltaBarrier{1e6}}) - kPi;
  EXPECT_LT(qcore::phase_distance(extra, -4.0), 1e-5);
}

TEST(Phase, DenseSweepOracle) {
  // Oracle: continuous phase of the closed form followed on a fine strength
  // grid; the total change from 0 to a hard wall is -2pX modulo 2 pi.
  const double p = 1.0, X = 2.0;
  double prev = delta_reflection_phase_closed_form(p, 1.0, X, 0.0), total = 0.0;
  for (int k = 1; k <= 20000; ++k) {
    const double g = std::pow(10.0, -4.0 + 10.0 * k / 20000.0);
    const double cur = delta_reflection_phase_closed_form(p, 1.0, X, g);
    total += std::remainder(cur - prev, 2 * kPi);
    prev = cur;
  }
  EXPECT_LT(qcore::phase_distance(total, -2 * p * X), 1e-3);
  const double direct = reflection_phase({p, 1.0, X, DeltaBarrier{1e6}}) - reflection_phase({p, 1.0, X, DeltaBarrier{0.0}});
  EXPECT_LT(qcore::phase_distance(direct, total), 1e-3);
}

TEST(Phase, WindingCountGolden) {
  const auto prof = ProbeProfile::exponential(1e6, 0.1, 10.0);
  std::vector<double> Y;
  for (int i = 0; i <= 200; ++i)
    Y.push_back(0.1 + 1e-9 + 9.9 * i / 200.0);
  const std::pair<double, int> cases[] = {{2.0, 0}, {3.0, 0}, {5.0, 1}, {7.0, 2}};
  for (const auto &[pX, wind] : cases) {
    const auto t = phase_vs_Y(prof, {1.0, 1.0, pX, DeltaBarrier{}}, Y);
    EXPECT_EQ(t.winding_count, wind) << pX;
    for (std::size_t k = 1; k < t.rows.size(); ++k)
      EXPECT_LT(std::abs(t.rows[k].unwrapped - t.rows[k - 1].unwrapped), kPi);
  }
}

TEST(Phase, NaiveForceGrowsWithX) {
  EXPECT_DOUBLE_EQ(naive_force_estimate(1.0, 2.0, 1.0, 10.0), 0.04);
  EXPECT_GT(naive_force_estimate(1.0, 200.0, 1.0, 10.0), naive_force_estimate(1.0, 2.0, 1.0, 10.0));
}

TEST(Config, Validation) {
  EXPECT_THROW(reflection_phase({-1.0, 1.0, 1.0, DeltaBarrier{}}), ArgumentError);
  EXPECT_THROW(reflection_phase({1.0, 1.0, 1.0, SquareBarrier{1.0, 2.0}}), ArgumentError);
  EXPECT_THROW(reflection_phase({1.0, 1.0, 1.0, DeltaBarrier{-1.0}}), ArgumentError);
}

TEST(Bounce, NetMomentumExactlyZero) {
  for (double eps : {1e-4, 0.01, 0.1, 0.25, 0.5, 0.75, 0.99}) {
    const auto e = bounce_chain_expectation({eps, 1.7});
    EXPECT_EQ(e.net_momentum, 0.0) << eps;
    EXPECT_DOUBLE_EQ(e.first_kick, 2 * 1.7 * (1 - eps));
    EXPECT_DOUBLE_EQ(e.trapped_kicks, -2 * 1.7 * (1 - eps));
  }
  EXPECT_THROW(bounce_chain_expectation({1.0, 1.7}), ArgumentError);
  EXPECT_THROW(bounce_chain_expectation({0.0, 1.7}), ArgumentError);
}

TEST(Bounce, PartialSumsConvergeGeometrically) {
  const BounceChain c{0.2, 1.0};
  const double limit = bounce_chain_expectation(c).trapped_kicks;
  for (int n : {1, 5, 20, 100})
    EXPECT_NEAR(bounce_chain_partial_kicks(c, n) - limit, 2.0 * std::pow(0.8, n + 1), 1e-12) << n;
}

TEST(Bounce, MonteCarloIndependentOfJobs) {
  const BounceChain c{0.1, 1.0};
  const auto a = bounce_chain_sample(c, 300000, 42, 1);
  const auto b = bounce_chain_sample(c, 300000, 42, 4);
  EXPECT_EQ(a.mean_net_momentum, b.mean_net_momentum);
  EXPECT_EQ(a.mean_dwell, b.mean_dwell);
  EXPECT_EQ(a.first_nets, b.first_nets);
  EXPECT_LT(std::abs(a.mean_net_momentum), 5 * a.net_standard_error);
  EXPECT_LT(std::abs(a.mean_dwell - 9.0), 5 * a.dwell_standard_error);
}

TEST(Lattice, DeltaCalibration) {
  EXPECT_DOUBLE_EQ(lattice_delta_strength(2.0, 1.0, 1e-9), 2.0);
  EXPECT_NEAR(lattice_delta_strength(2.0, 1.0, 0.3), 2.0 * std::sin(0.3) / 0.3, 1e-15);
}

TEST(Wavepacket, SmallRunConservesAndBalances) {
  WavepacketRun run;
  run.L = 600.0;
  run.points = 2048;
  run.x0 = 60.0;
  run.sigma = 6.0;
  run.duration = 200.0;
  const auto r = wavepacket_run(run, {1.0, 1.0, 20.0, DeltaBarrier{delta_strength_for_transmission(1.0, 1.0, 0.3)}});
  EXPECT_LT(r.summary.max_norm_drift, 1e-9);
  EXPECT_LT(r.summary.bookkeeping_residual, 1e-6);
  ASSERT_FALSE(r.series.empty());
  EXPECT_NEAR(r.series.front().survival, 0.0, 1e-6);
}

TEST(Wavepacket, FarWallThrows) {
  WavepacketRun run;
  run.L = 300.0;
  run.points = 1024;
  run.x0 = 60.0;
  run.sigma = 6.0;
  run.duration = 600.0;
  EXPECT_THROW(wavepacket_run(run, {1.0, 1.0, 20.0, DeltaBarrier{1.0}}), GeometryError);
}
