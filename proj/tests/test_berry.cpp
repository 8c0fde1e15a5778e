#include <cmath>
#include <random>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <gtest/gtest.h>

#include "adiabat/berry.hpp"
#include "adiabat/errors.hpp"

using namespace adiabat;
using namespace adiabat::berry;
using qcore::kPi;

namespace {

double wilson_on(const SphereLoop &loop, double A = 1.0) {
  return wilson_loop_phase([A](const Point &r) { return spin_coupling(A * r); },
                           loop.as_parameter_loop(), 0);
}

// Oracle: Berry phase of the ground state of R.sigma with an explicit gauge
// |u> = (-e^{-i phi} sin(theta/2), cos(theta/2)), connection A_phi = sin^2(theta/2),
// integrated densely along the loop: gamma = int sin^2(theta/2) dphi.
double connection_phase(double theta, int n) {
  double sum = 0.0;
  for (int k = 0; k < n; ++k)
    sum += std::pow(std::sin(theta / 2.0), 2) * (2.0 * kPi / n);
  return qcore::wrap_phase(sum);
}

} // namespace

TEST(Wilson, LatitudeAgainstConnectionOracle) {
  for (double deg : {10.0, 30.0, 60.0, 90.0, 120.0, 170.0}) {
    const double th = deg * kPi / 180.0;
    EXPECT_LT(qcore::phase_distance(wilson_on(latitude_loop(th, 2048)), connection_phase(th, 4096)), 1e-5)
        << deg;
  }
}

TEST(Wilson, ReversalFlipsSign) {
  const auto loop = latitude_loop(1.0, 512).as_parameter_loop();
  const auto field = [](const Point &r) { return spin_coupling(r); };
  EXPECT_NEAR(wilson_loop_phase(field, loop, 0), -wilson_loop_phase(field, loop.reversed(), 0), 1e-12);
}

TEST(Wilson, ExcitedBandOpposite) {
  const auto loop = latitude_loop(1.0, 512).as_parameter_loop();
  const auto field = [](const Point &r) { return spin_coupling(r); };
  EXPECT_LT(qcore::phase_distance(wilson_loop_phase(field, loop, 0), -wilson_loop_phase(field, loop, 1)),
            1e-12);
}

TEST(Wilson, GaugeInvariantUnderRandomPhases) {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> u(-kPi, kPi);
  const auto loop = latitude_loop(0.8, 64);
  std::vector<CVector> states;
  for (const auto &p : loop.cartesian())
    states.push_back(qcore::instantaneous_eigensystem(qcore::pauli_dot(p)).vectors[0]);
  states.pop_back();
  const double ref = discrete_berry_phase(states);
  for (auto &s : states)
    s *= std::polar(1.0, u(gen));
  EXPECT_NEAR(discrete_berry_phase(states), ref, 1e-12);
}

TEST(Wilson, DegeneracyOnLoopThrows) {
  std::vector<Point> pts;
  for (int k = 0; k <= 16; ++k) {
    Point p(3);
    p << std::cos(k * kPi / 8) - 1.0, std::sin(k * kPi / 8), 0.0;
    pts.push_back(p);
  }
  pts.back() = pts.front();
  EXPECT_THROW(wilson_loop_phase([](const Point &r) { return spin_coupling(r); }, ParameterLoop(pts, true), 0),
               DegeneracyError);
}

TEST(SolidAngle, CapOracle) {
  // A cap of angular radius a has solid angle 2 pi (1 - cos a), wherever it sits.
  const Vec3 centre = Vec3(0.3, -0.5, 0.8).normalized();
  for (double a : {0.2, 1.0, 1.5}) {
    const auto pts = cap_boundary(centre, a, 4096);
    EXPECT_NEAR(solid_angle(pts), 2.0 * kPi * (1.0 - std::cos(a)), 1e-5) << a;
  }
}

TEST(SolidAngle, TriangleOctant) {
  EXPECT_NEAR(triangle_solid_angle(Vec3::UnitX(), Vec3::UnitY(), Vec3::UnitZ()), kPi / 2.0, 1e-14);
}

TEST(Dynamics, EquatorGeometricPhaseNearPi) {
  const auto d = qcore::phase_decompose(equatorial_schedule(1.0, 0.005), spin_ground_state(Vec3::UnitX()), 0.05);
  EXPECT_LT(qcore::phase_distance(d.geometric, kPi), 0.05);
}

TEST(Dynamics, LatitudeGeometricPhaseFollowsSolidAngle) {
  const double th = kPi / 3.0;
  const Vec3 start(std::sin(th), 0.0, std::cos(th));
  const auto d = qcore::phase_decompose(latitude_schedule(1.0, 0.002, th), spin_ground_state(start), 0.05);
  EXPECT_LT(qcore::phase_distance(d.geometric, kPi * (1.0 - std::cos(th))), 0.02);
}

TEST(RotatingFrame, ExactValuesAndRegime) {
  const auto r = rotating_frame(2.0, 0.04);
  EXPECT_EQ(r.sigma3_expectation, 0.01);
  EXPECT_EQ(r.cone_deficit, 0.02);
  EXPECT_NEAR(r.accumulated_phase, kPi, 1e-15);
  EXPECT_THROW(rotating_frame(1.0, 0.6), RegimeError);
}

namespace {

// Oracle: L_z of a monopole g at the origin and a charge e at R z-hat in
// cylindrical coordinates, L_z = -(e g R / 2) int int rho^3 / (d^3 r^3) drho dz,
// with balls of radius eps excised about both sources.
double cylindrical_monopole_lz(double e, double g, double R, double eps) {
  using boost::math::quadrature::gauss_kronrod;
  auto inner = [&](double z) {
    double lo = 0.0;
    if (std::abs(z) < eps)
      lo = std::sqrt(eps * eps - z * z);
    if (std::abs(z - R) < eps)
      lo = std::max(lo, std::sqrt(eps * eps - (z - R) * (z - R)));
    auto f = [&](double rho) {
      const double r2 = rho * rho + z * z, d2 = rho * rho + (z - R) * (z - R);
      return rho * rho * rho / (std::pow(d2, 1.5) * std::pow(r2, 1.5));
    };
    return gauss_kronrod<double, 61>::integrate(f, lo, std::numeric_limits<double>::infinity(), 15, 1e-12);
  };
  const double inf = std::numeric_limits<double>::infinity();
  const double cuts[] = {-inf, -eps, eps, R - eps, R + eps, inf};
  double total = 0.0;
  for (int k = 0; k < 5; ++k)
    total += gauss_kronrod<double, 61>::integrate(inner, cuts[k], cuts[k + 1], 15, 1e-11);
  return -0.5 * e * g * R * total;
}

} // namespace

TEST(Monopole, CylindricalQuadratureOracle) {
  const double lz = cylindrical_monopole_lz(1.0, 1.0, 1.0, 0.01);
  const auto m = monopole_field_angular_momentum(1.0, 1.0, 1.0, Vec3::UnitZ());
  EXPECT_NEAR(m.angular_momentum.z(), lz, 1e-6);
  EXPECT_NEAR(m.angular_momentum.head<2>().norm(), 0.0, 1e-12);
}

TEST(Monopole, GoldenMagnitude) {
  // Frozen from the library at excision 0.01.
  const auto m = monopole_field_angular_momentum(1.0, 1.0, 1.0, Vec3::UnitZ());
  EXPECT_NEAR(m.magnitude, 0.999933333333, 1e-9);
}

TEST(Monopole, IndependentOfSeparationAndScalesWithCharges) {
  const auto a = monopole_field_angular_momentum(1.0, 1.0, 1.0, Vec3(1, 2, -0.5));
  const auto b = monopole_field_angular_momentum(2.0, -3.0, 7.0, Vec3(1, 2, -0.5));
  EXPECT_NEAR(b.magnitude, 6.0 * a.magnitude, 1e-6);
  EXPECT_NEAR(a.angular_momentum.normalized().dot(Vec3(1, 2, -0.5).normalized()), -1.0, 1e-9);
}
