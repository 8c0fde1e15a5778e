#pragma once

// Berry phases of the probe/spin-1/2 system: discrete Wilson loops, the
// solid-angle rule, the rotating-frame estimate and the field angular
// momentum of a charge-monopole pair.
//
// Sign conventions (fixed once, asserted in tests):
//   * a loop traversed counterclockwise seen from +z has positive solid angle;
//   * for H(R) = R . sigma the ground band picks up +Omega/2 (mod 2pi) on such
//     a loop, i.e. wilson_loop_phase = -arg prod <u_k|u_k+1> = +Omega/2.

#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "adiabat/qcore.hpp"

namespace adiabat::berry {

using qcore::CMatrix;
using qcore::CVector;
using qcore::Vec3;
using Point = Eigen::VectorXd;

/// Ordered, discretised path in parameter space. When closed the last point
/// repeats the first.
class ParameterLoop {
public:
  ParameterLoop(std::vector<Point> points, bool closed);

  const std::vector<Point> &points() const noexcept { return pts_; }
  bool closed() const noexcept { return closed_; }
  std::size_t dimension() const noexcept { return pts_.front().size(); }
  /// Number of distinct samples (the closing point is not counted).
  std::size_t distinct_count() const noexcept { return closed_ ? pts_.size() - 1 : pts_.size(); }

  /// Traverse the same closed loop `times` times.
  ParameterLoop repeated(int times) const;
  ParameterLoop reversed() const;

private:
  std::vector<Point> pts_;
  bool closed_;
};

/// Closed loop on the unit sphere given by polar/azimuthal samples.
class SphereLoop {
public:
  /// The closing sample is appended automatically if missing.
  SphereLoop(std::vector<double> polar, std::vector<double> azimuth);

  const std::vector<double> &polar() const noexcept { return theta_; }
  const std::vector<double> &azimuth() const noexcept { return phi_; }
  std::vector<Vec3> cartesian() const;
  /// Parameter loop through the same points (3-d, closed).
  ParameterLoop as_parameter_loop() const;

private:
  std::vector<double> theta_;
  std::vector<double> phi_;
};

/// Latitude circle at polar angle theta, counterclockwise seen from +z.
SphereLoop latitude_loop(double theta, std::size_t samples);

/// Circle of angular radius `radius` around the unit direction `center`,
/// counterclockwise seen from outside the sphere along `center`.
std::vector<Vec3> cap_boundary(const Vec3 &center, double radius, std::size_t samples);

using HamiltonianField = std::function<CMatrix(const Point &)>;

/// Gauge-invariant phase -arg prod_k <u_k|u_{k+1}> of a closed chain of
/// states; the chain is closed by pairing the last state with the first.
double discrete_berry_phase(std::span<const CVector> states);

/// Discrete Wilson-loop Berry phase of `band` along a closed loop, in
/// (-pi, pi]. Throws DegeneracyError (with the sample index) where the band's
/// gap to a neighbour falls to 1e-9 or below.
double wilson_loop_phase(const HamiltonianField &hamiltonian_at, const ParameterLoop &loop,
                         std::size_t band);

/// Signed solid angle enclosed by a closed loop of unit vectors, by summing
/// spherical excesses of triangles (anchor, p_k, p_k+1). Result lies in
/// (-4pi, 4pi). Throws GeometryError on antipodal consecutive points.
double solid_angle(const SphereLoop &loop);
double solid_angle(std::span<const Vec3> unit_points);

/// Signed solid angle of the spherical triangle (a, b, c).
double triangle_solid_angle(const Vec3 &a, const Vec3 &b, const Vec3 &c);

struct RotatingFrameResult {
  double sigma3_expectation = 0.0; // w / (2A)
  double cone_deficit = 0.0;       // w / A
  double accumulated_phase = 0.0;  // A (w/A)(2pi/w)(1/2) = pi
};

/// First-order rotating-frame analysis of H(t) = A[cos wt s1 + sin wt s2].
/// Requires A > 0, w >= 0 and w/A < 0.5 (RegimeError otherwise).
RotatingFrameResult rotating_frame(double A, double w);

/// H(t) = A[cos(wt) sigma1 + sin(wt) sigma2] over one period 2pi/w.
qcore::HamiltonianSchedule equatorial_schedule(double A, double w);
/// Same, on the latitude circle at polar angle theta.
qcore::HamiltonianSchedule latitude_schedule(double A, double w, double theta);

/// Ground state of H = R . sigma.
qcore::StateVector spin_ground_state(const Vec3 &direction);

/// H(R) = R . sigma, the probe/spin coupling.
CMatrix spin_coupling(const Point &r);

struct MonopoleQuadrature {
  int nodes_per_panel = 12;  // Gauss-Legendre nodes per graded panel
  int azimuth_nodes = 8;     // trapezoid nodes in the azimuth
  double excision = 0.01;    // excised ball radius, in units of R
  double tolerance = 0.01;   // relative refinement tolerance
};

struct MonopoleResult {
  Vec3 angular_momentum;    // (1/4pi) int r x (E x B) d^3r
  double magnitude = 0.0;
  double refinement_change = 0.0; // relative change under node/excision refinement
};

/// Field angular momentum of a point charge `e` at R*n and a monopole `g` at
/// the origin (Gaussian units, B = g r/r^3), integrated on a monopole-centred
/// spherical grid with balls of radius excision*R cut out around both
/// sources. Throws AccuracyError if refinement changes the answer by more
/// than the tolerance.
MonopoleResult monopole_field_angular_momentum(double e, double g, double R, const Vec3 &n,
                                               const MonopoleQuadrature &quad = {});

} // namespace adiabat::berry
