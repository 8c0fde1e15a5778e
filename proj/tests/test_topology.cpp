#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "adiabat/errors.hpp"
#include "adiabat/topology.hpp"

using namespace adiabat;
using namespace adiabat::topology;

namespace {

constexpr double kPi = 3.14159265358979323846;

// Oracle: plain midpoint Gauss double sum
// (1/4pi) sum (dA x dB) . (A - B) / |A - B|^3 over segment midpoints.
double naive_gauss(const Curve3D &a, const Curve3D &b) {
  const auto &pa = a.points(), &pb = b.points();
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < pa.size(); ++i) {
    const Vec3 ma = 0.5 * (pa[i] + pa[i + 1]), da = pa[i + 1] - pa[i];
    for (std::size_t j = 0; j + 1 < pb.size(); ++j) {
      const Vec3 mb = 0.5 * (pb[j] + pb[j + 1]), db = pb[j + 1] - pb[j];
      const Vec3 r = ma - mb;
      s += da.cross(db).dot(r) / std::pow(r.norm(), 3);
    }
  }
  return s / (4.0 * kPi);
}

// (p, q) torus curve about the z axis: p turns around the axis, q around the core circle.
Curve3D torus(double R, double a, int p, int q, std::size_t n) {
  std::vector<Vec3> pts;
  for (std::size_t k = 0; k <= n; ++k) {
    const double s = static_cast<double>(k % n) / n;
    const double u = 2 * kPi * p * s, v = 2 * kPi * q * s;
    pts.emplace_back((R + a * std::cos(v)) * std::cos(u), (R + a * std::cos(v)) * std::sin(u), a * std::sin(v));
  }
  return Curve3D(pts);
}

} // namespace

TEST(Linking, HopfGolden) {
  const auto a = circle(Vec3::Zero(), Vec3::UnitX(), Vec3::UnitY(), 1.0, 64);
  const auto b = circle(Vec3(1, 0, 0), Vec3::UnitX(), Vec3::UnitZ(), 1.0, 64);
  EXPECT_EQ(linking_number(a, b), -1);
  EXPECT_EQ(linking_number(b, a), -1);
  EXPECT_EQ(linking_number(a.reversed(), b), 1);
}

TEST(Linking, AgreesWithNaiveOracle) {
  const auto core = circle(Vec3::Zero(), Vec3::UnitX(), Vec3::UnitY(), 1.0, 400);
  for (int q : {0, 1, 2, 3}) {
    const auto t = q == 0 ? circle(Vec3(3, 0, 0), Vec3::UnitX(), Vec3::UnitZ(), 0.5, 400)
                          : torus(1.0, 0.3, 1, q, 400 * q);
    const double oracle = naive_gauss(core, t);
    EXPECT_NEAR(oracle, std::round(oracle), 0.05) << q;
    EXPECT_EQ(linking_number(core, t), static_cast<int>(std::lround(oracle))) << q;
    EXPECT_EQ(std::abs(linking_number(core, t)), q);
  }
}

TEST(Linking, InvariantUnderRigidMotionAndScale) {
  std::mt19937_64 gen(1);
  std::normal_distribution<double> d;
  const auto a = circle(Vec3::Zero(), Vec3::UnitX(), Vec3::UnitY(), 1.0, 96);
  const auto b = torus(1.0, 0.35, 1, 3, 288);
  const int ref = linking_number(a, b);
  for (int trial = 0; trial < 5; ++trial) {
    const Eigen::Matrix3d Q = Eigen::Quaterniond(d(gen), d(gen), d(gen), d(gen)).normalized().toRotationMatrix();
    const Vec3 shift(d(gen), d(gen), d(gen));
    const double s = 0.5 + std::abs(d(gen));
    EXPECT_EQ(linking_number(a.transformed(Q, shift, s), b.transformed(Q, shift, s)), ref);
  }
}

TEST(Linking, TouchingCurvesThrow) {
  const auto a = circle(Vec3::Zero(), Vec3::UnitX(), Vec3::UnitY(), 1.0, 64);
  const auto b = circle(Vec3(2, 0, 0), Vec3::UnitX(), Vec3::UnitY(), 1.0, 64);
  EXPECT_THROW(linking_number(a, b), GeometryError);
}

TEST(Curve, RejectsOpenAndSelfIntersecting) {
  std::vector<Vec3> open;
  for (int k = 0; k < 10; ++k)
    open.emplace_back(std::cos(k * 0.5), std::sin(k * 0.5), 0.0);
  EXPECT_THROW(Curve3D{open}, ArgumentError);
  // Figure eight in a plane.
  std::vector<Vec3> eight;
  for (int k = 0; k <= 64; ++k) {
    const double t = 2 * kPi * (k % 64) / 64.0;
    eight.emplace_back(std::sin(t), std::sin(t) * std::cos(t), 0.0);
  }
  EXPECT_THROW(Curve3D{eight}, GeometryError);
}

namespace {

RealFieldHamiltonian tilted_ring() {
  const Eigen::Matrix3d Q = Eigen::AngleAxisd(0.6, Vec3(1, 1, 0).normalized()).toRotationMatrix();
  const Vec3 c(0.2, -0.1, 0.3);
  return {[=](const Vec3 &r) { return (Q.transpose() * (r - c)).z(); },
          [=](const Vec3 &r) {
            const Vec3 l = Q.transpose() * (r - c);
            return l.x() * l.x() + l.y() * l.y() - 1.0;
          }};
}

} // namespace

TEST(Degeneracy, TracedRingSitsOnZeroSet) {
  const auto h = tilted_ring();
  const auto tc = degeneracy_curve(h, Box{Vec3::Constant(-2.5), Vec3::Constant(2.5)});
  ASSERT_TRUE(tc.closed);
  for (const auto &p : tc.points) {
    EXPECT_LT(std::abs(h.a1(p)), 1e-8);
    EXPECT_LT(std::abs(h.a3(p)), 1e-8);
  }
}

TEST(Degeneracy, GridScanOracleFindsNothingElse) {
  // Oracle: every grid cell where both components change sign must lie near
  // the traced curve.
  const auto h = tilted_ring();
  const auto tc = degeneracy_curve(h, Box{Vec3::Constant(-2.5), Vec3::Constant(2.5)});
  const int n = 40;
  const double lo = -2.5, step = 5.0 / n;
  int hits = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        bool p1 = false, m1 = false, p3 = false, m3 = false;
        for (int c = 0; c < 8; ++c) {
          const Vec3 v(lo + (i + (c & 1)) * step, lo + (j + ((c >> 1) & 1)) * step, lo + (k + ((c >> 2) & 1)) * step);
          const double a1 = h.a1(v), a3 = h.a3(v);
          (a1 >= 0 ? p1 : m1) = true;
          (a3 >= 0 ? p3 : m3) = true;
        }
        if (!(p1 && m1 && p3 && m3))
          continue;
        ++hits;
        const Vec3 centre(lo + (i + 0.5) * step, lo + (j + 0.5) * step, lo + (k + 0.5) * step);
        double best = INFINITY;
        for (const auto &p : tc.points)
          best = std::min(best, (p - centre).norm());
        EXPECT_LT(best, 2.0 * step);
      }
  EXPECT_GT(hits, 0);
}

TEST(Degeneracy, LineLeavesBoxAndLinksAfterClosure) {
  const RealFieldHamiltonian h{[](const Vec3 &r) { return r.x() - 0.2; }, [](const Vec3 &r) { return r.y() + 0.1; }};
  const auto tc = degeneracy_curve(h, Box{Vec3::Constant(-2), Vec3::Constant(2)});
  EXPECT_FALSE(tc.closed);
  const auto closed = close_at_infinity(tc.points, 100.0);
  const auto probe = circle(Vec3::Zero(), Vec3::UnitX(), Vec3::UnitY(), 1.0, 64);
  EXPECT_EQ(std::abs(linking_number(probe, closed)), 1);
  EXPECT_DOUBLE_EQ(topological_phase_predict(probe, closed), kPi);
  const auto away = circle(Vec3(5, 0, 0), Vec3::UnitX(), Vec3::UnitY(), 1.0, 64);
  EXPECT_EQ(linking_number(away, closed), 0);
}

TEST(Degeneracy, NoZeroThrows) {
  const RealFieldHamiltonian h{[](const Vec3 &) { return 1.0; }, [](const Vec3 &r) { return r.x(); }};
  EXPECT_THROW(degeneracy_curve(h, Box{Vec3::Constant(-1), Vec3::Constant(1)}), NotFoundError);
}

TEST(Counting, Table) {
  for (int n = 2; n <= 6; ++n) {
    const auto c = degeneracy_count(n);
    EXPECT_EQ(c.parameter_dim, n * n - 1);
    EXPECT_EQ(c.real_codimension, n * (n + 1) / 2 - 1);
    EXPECT_EQ(c.degeneracy_dim, n * (n - 1) / 2);
  }
  EXPECT_EQ(degeneracy_count(2).real_codimension, 2);
  EXPECT_THROW(degeneracy_count(1), ArgumentError);
}
