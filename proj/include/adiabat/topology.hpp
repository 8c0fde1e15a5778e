#pragma once

// Topological Berry phases of time-reversal-invariant two-level systems
// H = A1(R) sigma1 + A3(R) sigma3: degeneracy curves, Gauss linking numbers,
// the linking => pi rule and SU(n)/O(n) dimension counting.

#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace adiabat::topology {

using Vec3 = Eigen::Vector3d;

/// Closed polyline in 3-space; last point repeats the first.
class Curve3D {
public:
  /// Validates closure, point count (>= 8) and absence of self-intersection.
  explicit Curve3D(std::vector<Vec3> points);

  const std::vector<Vec3> &points() const noexcept { return pts_; }
  std::size_t segment_count() const noexcept { return pts_.size() - 1; }
  double max_segment_length() const;

  Curve3D reversed() const;
  /// Applies x -> scale * Q x + shift to every point.
  Curve3D transformed(const Eigen::Matrix3d &rotation, const Vec3 &shift, double scale = 1.0) const;

private:
  std::vector<Vec3> pts_;
};

/// Circle of `radius` about `center` in the plane spanned by u, v (traversed
/// from u towards v). `samples` distinct points.
Curve3D circle(const Vec3 &center, const Vec3 &u, const Vec3 &v, double radius,
               std::size_t samples);

/// Open polyline of a curve that leaves the search box; closed far away by
/// `close_at_infinity` when a linking number is needed.
struct TracedCurve {
  std::vector<Vec3> points;
  bool closed = false; // false: the trace left the box ("infinite" curve)
};

/// Closes an open polyline with a large rectangular detour at distance
/// `reach` from the origin, so that a bounded probe loop links it exactly as
/// it would link the infinite curve.
Curve3D close_at_infinity(const std::vector<Vec3> &open, double reach);

/// Gauss linking number from exact segment-pair solid angles. Throws
/// GeometryError if the curves touch and ResolutionError if the raw sum is
/// more than 0.05 from an integer.
int linking_number(const Curve3D &a, const Curve3D &b);

/// Unrounded Gauss double sum.
double gauss_linking_sum(const Curve3D &a, const Curve3D &b);

/// Smallest distance between any segment of `a` and any segment of `b`.
double min_curve_distance(const Curve3D &a, const Curve3D &b);

struct RealFieldHamiltonian {
  std::function<double(const Vec3 &)> a1;
  std::function<double(const Vec3 &)> a3;
};

struct Box {
  Vec3 lo;
  Vec3 hi;
  bool contains(const Vec3 &p) const;
  double diagonal() const { return (hi - lo).norm(); }
};

/// Traces the common zero set {A1 = A3 = 0} inside `box` by Newton root
/// finding and predictor-corrector continuation with step diagonal/resolution.
/// Throws NotFoundError when no zero is found, GeometryError ("non-transversal")
/// when the 2x3 Jacobian loses rank on the curve.
TracedCurve degeneracy_curve(const RealFieldHamiltonian &h, const Box &box,
                             double resolution = 100.0);

/// pi * (linking number mod 2): pi iff the probe loop threads C* an odd
/// number of times.
double topological_phase_predict(const Curve3D &probe, const Curve3D &cstar);

struct DegeneracyCount {
  int n = 0;
  int parameter_dim = 0;    // n^2 - 1
  int real_codimension = 0; // n(n+1)/2 - 1
  int degeneracy_dim = 0;   // n(n-1)/2
};

/// Dimension bookkeeping for complete degeneracies of n-level Hamiltonians.
DegeneracyCount degeneracy_count(int n);

} // namespace adiabat::topology
