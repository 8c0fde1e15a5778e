#include <cmath>
#include <complex>
#include <random>

#include <gtest/gtest.h>

#include "adiabat/abduality.hpp"
#include "adiabat/errors.hpp"

using namespace adiabat;
using namespace adiabat::abduality;

TEST(Duality, ProbeEqualsSystemOverRandomScenarios) {
  std::mt19937_64 gen(2024);
  std::uniform_real_distribution<double> lu(std::log(1e-3), std::log(1e3));
  for (int k = 0; k < 1000; ++k) {
    const CapacitorScenario s{std::exp(lu(gen)), std::exp(lu(gen)), std::exp(lu(gen)), std::exp(lu(gen))};
    const auto r = duality_report(s);
    EXPECT_TRUE(r.match);
    const double want = 2 * s.e * s.E * s.x * s.t;
    EXPECT_LE(std::abs(r.probe_phase - want), 4 * std::numeric_limits<double>::epsilon() * want);
    EXPECT_LE(std::abs(r.system_phase - want), 4 * std::numeric_limits<double>::epsilon() * want);
    EXPECT_DOUBLE_EQ(r.plate_momentum, s.e * s.E * s.t);
  }
}

TEST(WhichPath, RatioAboveOneUnderPhaseBound) {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> u(1e-6, 1.0), lu(std::log(0.01), std::log(100.0));
  for (int k = 0; k < 1000; ++k) {
    CapacitorScenario s{std::exp(lu(gen)), std::exp(lu(gen)), std::exp(lu(gen)), 0.0};
    s.t = u(gen) * 3.141592653589793 / (2 * s.e * s.E * s.x);
    const auto w = which_path_ratio(s, u(gen) * s.x / 4);
    EXPECT_TRUE(w.phase_within_pi);
    EXPECT_GT(w.ratio, 1.0);
    EXPECT_TRUE(w.fringes_destroyed);
  }
}

TEST(WhichPath, Validation) {
  EXPECT_THROW(which_path_ratio({1, 1, 1, 1}, 0.0), ArgumentError);
  EXPECT_THROW(duality_report({-1, 1, 1, 1}), ArgumentError);
}

TEST(Visibility, GaussianOverlapQuadratureOracle) {
  // Oracle: |int |psi(X)|^2 exp(i q X) dX| by the trapezoid rule on a wide grid.
  for (const auto &[q, s] : {std::pair{0.5, 1.0}, std::pair{2.0, 0.7}, std::pair{3.0, 0.2}}) {
    std::complex<double> sum = 0.0;
    const int n = 20001;
    const double L = 12 * s, h = 2 * L / (n - 1);
    for (int k = 0; k < n; ++k) {
      const double X = -L + k * h;
      const double rho = std::exp(-X * X / (2 * s * s)) / (std::sqrt(2 * 3.141592653589793) * s);
      sum += rho * std::polar(1.0, q * X) * h;
    }
    EXPECT_NEAR(gaussian_fringe_visibility(q, s), std::abs(sum), 1e-10);
  }
}
