#include <cmath>
#include <random>

#include <gtest/gtest.h>
#include <unsupported/Eigen/MatrixFunctions>

#include "adiabat/errors.hpp"
#include "adiabat/qcore.hpp"

using namespace adiabat;
using namespace adiabat::qcore;

namespace {

CMatrix random_hermitian(std::mt19937_64 &gen, int n) {
  std::normal_distribution<double> d;
  CMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      m(i, j) = Complex(d(gen), d(gen));
  return 0.5 * (m + m.adjoint());
}

} // namespace

TEST(Phase, WrapRange) {
  EXPECT_DOUBLE_EQ(wrap_phase(-kPi), kPi);
  EXPECT_DOUBLE_EQ(wrap_phase(kPi), kPi);
  EXPECT_NEAR(wrap_phase(3.0 * kPi + 0.1), -kPi + 0.1, 1e-12);
  EXPECT_NEAR(phase_distance(kPi - 0.01, -kPi + 0.01), 0.02, 1e-12);
}

TEST(State, RejectsUnnormalised) {
  CVector v(2);
  v << 1.0, 1.0;
  EXPECT_THROW(StateVector{v}, ArgumentError);
  EXPECT_NEAR(StateVector::normalized(v).amplitudes().norm(), 1.0, 1e-15);
  EXPECT_THROW(StateVector::normalized(CVector::Zero(2)), ArgumentError);
}

TEST(Pauli, Algebra) {
  const CMatrix I = identity2();
  EXPECT_TRUE((sigma1() * sigma1()).isApprox(I));
  EXPECT_TRUE((sigma1() * sigma2()).isApprox(Complex(0, 1) * sigma3()));
  EXPECT_TRUE((sigma2() * sigma3()).isApprox(Complex(0, 1) * sigma1()));
  const CMatrix h = pauli_combination(0.5, Vec3(1, 2, 3));
  EXPECT_TRUE(is_hermitian(h));
  EXPECT_NEAR(h.trace().real(), 1.0, 1e-15);
}

TEST(Hermitian, RejectsNonHermitian) {
  CMatrix m(2, 2);
  m << 1, 2, 3, 4;
  EXPECT_THROW(HermitianOperator{m}, ArgumentError);
  const auto sched = HamiltonianSchedule([m](double) { return m; }, 1.0);
  EXPECT_THROW(sched.at(0.5), ScheduleError);
}

TEST(Eigen, MatchesGeneralSolver) {
  std::mt19937_64 gen(5);
  for (int n : {2, 3, 5}) {
    for (int trial = 0; trial < 20; ++trial) {
      const CMatrix h = random_hermitian(gen, n);
      const auto es = instantaneous_eigensystem(h);
      Eigen::SelfAdjointEigenSolver<CMatrix> ref(h);
      for (int k = 0; k < n; ++k) {
        EXPECT_NEAR(es.values[k], ref.eigenvalues()[k], 1e-12);
        EXPECT_LT((h * es.vectors[k] - es.values[k] * es.vectors[k]).norm(), 1e-12);
      }
    }
  }
}

TEST(Evolve, ConstantHamiltonianMatchesMatrixExponential) {
  std::mt19937_64 gen(9);
  for (int n : {2, 4}) {
    const CMatrix h = random_hermitian(gen, n);
    const double T = 3.0;
    const CMatrix exact = (Complex(0, -T) * h).exp();
    const CMatrix u = propagator(HamiltonianSchedule::constant(h, T), 0.09 / spectral_radius(h));
    // Exact for 2x2; the Cayley step is second order for larger matrices.
    EXPECT_LT((u - exact).norm(), n == 2 ? 1e-12 : 1e-2);
    EXPECT_LT((u.adjoint() * u - CMatrix::Identity(n, n)).norm(), 1e-12);
  }
}

TEST(Evolve, StepResolutionGuard) {
  const auto sched = HamiltonianSchedule::constant(10.0 * sigma1(), 1.0);
  CVector v(2);
  v << 1.0, 0.0;
  EXPECT_THROW(evolve(sched, StateVector(v), 0.1), ArgumentError);
}

TEST(Evolve, NormConservedOverLongRun) {
  const auto sched = HamiltonianSchedule(
      [](double t) { return pauli_dot(Vec3(std::cos(0.01 * t), std::sin(0.01 * t), 0.3)); }, 2000.0);
  CVector v(2);
  v << 1.0, 0.0;
  const auto psi = evolve(sched, StateVector(v), 0.05);
  EXPECT_NEAR(psi.amplitudes().norm(), 1.0, 1e-12);
}

TEST(PhaseDecompose, StationaryStateIsPurelyDynamical) {
  const CMatrix h = pauli_dot(Vec3(0, 0, 2.0));
  CVector v(2);
  v << 0.0, 1.0; // energy -2
  const auto d = phase_decompose(HamiltonianSchedule::constant(h, 1.0), StateVector(v), 0.01);
  EXPECT_NEAR(d.dynamical, 2.0, 1e-12);
  EXPECT_NEAR(d.geometric, 0.0, 1e-12);
  EXPECT_NEAR(d.overlap, 1.0, 1e-12);
}

TEST(PhaseDecompose, NonCyclicThrowsWithOverlap) {
  CVector v(2);
  v << 1.0, 0.0;
  // Half a Rabi flip leaves overlap 1/sqrt(2).
  try {
    phase_decompose(HamiltonianSchedule::constant(sigma1(), kPi / 4.0), StateVector(v), 0.01);
    FAIL() << "expected CyclicityError";
  } catch (const CyclicityError &e) {
    EXPECT_NEAR(e.overlap(), std::sqrt(0.5), 1e-9);
  }
}
