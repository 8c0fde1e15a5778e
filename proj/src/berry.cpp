#include "adiabat/berry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "adiabat/errors.hpp"

namespace adiabat::berry {

using qcore::Complex;
using qcore::kPi;

ParameterLoop::ParameterLoop(std::vector<Point> points, bool closed)
    : pts_(std::move(points)), closed_(closed) {
  if (pts_.size() < 2)
    throw ArgumentError("parameter loop needs at least two points");
  const auto dim = pts_.front().size();
  if (dim == 0)
    throw ArgumentError("parameter loop points must be non-empty vectors");
  for (std::size_t k = 0; k < pts_.size(); ++k) {
    if (pts_[k].size() != dim)
      throw ArgumentError("parameter loop points have inconsistent dimension");
    if (k > 0 && (pts_[k] - pts_[k - 1]).norm() == 0.0)
      throw ArgumentError("consecutive loop points coincide at index " + std::to_string(k));
  }
  if (closed_) {
    if (pts_.size() < 4)
      throw ArgumentError("a closed loop needs at least four points");
    if ((pts_.back() - pts_.front()).norm() > 1e-12)
      throw ArgumentError("closed loop: last point must equal the first");
  }
}

ParameterLoop ParameterLoop::repeated(int times) const {
  if (!closed_ || times < 1)
    throw ArgumentError("only closed loops can be repeated, at least once");
  std::vector<Point> out;
  const std::size_t n = distinct_count();
  out.reserve(n * times + 1);
  for (int t = 0; t < times; ++t)
    for (std::size_t k = 0; k < n; ++k)
      out.push_back(pts_[k]);
  out.push_back(pts_.front());
  return ParameterLoop(std::move(out), true);
}

ParameterLoop ParameterLoop::reversed() const {
  std::vector<Point> out(pts_.rbegin(), pts_.rend());
  return ParameterLoop(std::move(out), closed_);
}

SphereLoop::SphereLoop(std::vector<double> polar, std::vector<double> azimuth)
    : theta_(std::move(polar)), phi_(std::move(azimuth)) {
  if (theta_.size() != phi_.size())
    throw ArgumentError("sphere loop: polar and azimuth sample counts differ");
  if (theta_.size() < 3)
    throw ArgumentError("sphere loop needs at least three samples");
  auto unit = [](double t, double p) {
    return Vec3(std::sin(t) * std::cos(p), std::sin(t) * std::sin(p), std::cos(t));
  };
  if ((unit(theta_.front(), phi_.front()) - unit(theta_.back(), phi_.back())).norm() > 1e-12) {
    theta_.push_back(theta_.front());
    phi_.push_back(phi_.front());
  }
  if (theta_.size() < 4)
    throw ArgumentError("a closed sphere loop needs at least four points");
}

std::vector<Vec3> SphereLoop::cartesian() const {
  std::vector<Vec3> out;
  out.reserve(theta_.size());
  for (std::size_t k = 0; k < theta_.size(); ++k)
    out.emplace_back(std::sin(theta_[k]) * std::cos(phi_[k]),
                     std::sin(theta_[k]) * std::sin(phi_[k]), std::cos(theta_[k]));
  // The closing point is made bit-identical to the first.
  out.back() = out.front();
  return out;
}

ParameterLoop SphereLoop::as_parameter_loop() const {
  const auto xyz = cartesian();
  std::vector<Point> pts(xyz.begin(), xyz.end());
  return ParameterLoop(std::move(pts), true);
}

SphereLoop latitude_loop(double theta, std::size_t samples) {
  if (samples < 3)
    throw ArgumentError("latitude loop needs at least three samples");
  std::vector<double> t(samples + 1, theta), p(samples + 1);
  for (std::size_t k = 0; k <= samples; ++k)
    p[k] = 2.0 * kPi * static_cast<double>(k) / static_cast<double>(samples);
  return SphereLoop(std::move(t), std::move(p));
}

std::vector<Vec3> cap_boundary(const Vec3 &center, double radius, std::size_t samples) {
  const Vec3 c = center.normalized();
  const Vec3 helper = std::abs(c.z()) < 0.9 ? Vec3::UnitZ() : Vec3::UnitX();
  const Vec3 u = helper.cross(c).normalized();
  const Vec3 v = c.cross(u);
  std::vector<Vec3> out;
  out.reserve(samples + 1);
  for (std::size_t k = 0; k < samples; ++k) {
    const double phi = 2.0 * kPi * static_cast<double>(k) / static_cast<double>(samples);
    out.push_back(std::cos(radius) * c + std::sin(radius) * (std::cos(phi) * u + std::sin(phi) * v));
  }
  out.push_back(out.front());
  return out;
}

double discrete_berry_phase(std::span<const CVector> states) {
  if (states.size() < 2)
    throw ArgumentError("need at least two states for a Berry phase");
  double sum = 0.0;
  for (std::size_t k = 0; k < states.size(); ++k) {
    const CVector &a = states[k];
    const CVector &b = states[(k + 1) % states.size()];
    const Complex ov = a.dot(b);
    if (std::abs(ov) < 1e-300)
      throw ArgumentError("orthogonal neighbouring states: loop sampling too coarse");
    sum += std::arg(ov);
  }
  return qcore::wrap_phase(-sum);
}

double wilson_loop_phase(const HamiltonianField &hamiltonian_at, const ParameterLoop &loop,
                         std::size_t band) {
  if (!loop.closed())
    throw ArgumentError("Wilson loop requires a closed loop");
  const std::size_t n = loop.distinct_count();
  std::vector<CVector> states;
  states.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const CMatrix h = hamiltonian_at(loop.points()[k]);
    if (!qcore::is_hermitian(h))
      throw ScheduleError("Hamiltonian field is not Hermitian at loop point " + std::to_string(k));
    const auto es = qcore::instantaneous_eigensystem(h);
    if (band >= es.values.size())
      throw ArgumentError("band index out of range");
    double gap = std::numeric_limits<double>::infinity();
    if (band > 0)
      gap = std::min(gap, es.values[band] - es.values[band - 1]);
    if (band + 1 < es.values.size())
      gap = std::min(gap, es.values[band + 1] - es.values[band]);
    if (gap <= 1e-9)
      throw DegeneracyError("band gap closes along the loop at point " + std::to_string(k), k);
    states.push_back(es.vectors[band]);
  }
  return discrete_berry_phase(states);
}

double triangle_solid_angle(const Vec3 &a, const Vec3 &b, const Vec3 &c) {
  const double num = a.dot(b.cross(c));
  const double den = 1.0 + a.dot(b) + b.dot(c) + c.dot(a);
  return 2.0 * std::atan2(num, den);
}

namespace {

// Anchor for the triangle fan: the north pole, unless the loop passes near
// either pole; then the candidate farthest from the loop and its antipodes.
Vec3 choose_anchor(std::span<const Vec3> pts) {
  auto clearance = [&](const Vec3 &a) {
    double worst = 1.0;
    for (const auto &p : pts)
      worst = std::min(worst, 1.0 - std::abs(a.dot(p)));
    return worst;
  };
  const Vec3 north = Vec3::UnitZ();
  if (clearance(north) > 1e-6)
    return north;

  // Fibonacci sphere candidates.
  constexpr int kCandidates = 200;
  const double golden = kPi * (3.0 - std::sqrt(5.0));
  Vec3 best = north;
  double best_clear = -1.0;
  for (int i = 0; i < kCandidates; ++i) {
    const double z = 1.0 - 2.0 * (i + 0.5) / kCandidates;
    const double rho = std::sqrt(1.0 - z * z);
    const Vec3 a(rho * std::cos(golden * i), rho * std::sin(golden * i), z);
    const double c = clearance(a);
    if (c > best_clear) {
      best_clear = c;
      best = a;
    }
  }
  return best;
}

} // namespace

double solid_angle(std::span<const Vec3> unit_points) {
  if (unit_points.size() < 4)
    throw ArgumentError("solid angle needs a closed loop of at least four points");
  for (const auto &p : unit_points)
    if (std::abs(p.norm() - 1.0) > 1e-12)
      throw ArgumentError("solid angle: point not on the unit sphere");
  if ((unit_points.front() - unit_points.back()).norm() > 1e-12)
    throw ArgumentError("solid angle: loop is not closed");

  for (std::size_t k = 0; k + 1 < unit_points.size(); ++k)
    if (unit_points[k].dot(unit_points[k + 1]) <= -1.0 + 1e-12)
      throw GeometryError("antipodal consecutive points at index " + std::to_string(k) +
                          ": the connecting arc is ambiguous");

  const Vec3 anchor = choose_anchor(unit_points);
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < unit_points.size(); ++k)
    total += triangle_solid_angle(anchor, unit_points[k], unit_points[k + 1]);
  return total;
}

double solid_angle(const SphereLoop &loop) {
  const auto pts = loop.cartesian();
  return solid_angle(std::span<const Vec3>(pts));
}

RotatingFrameResult rotating_frame(double A, double w) {
  if (!(A > 0.0))
    throw ArgumentError("coupling A must be positive");
  if (!(w >= 0.0))
    throw ArgumentError("angular frequency w must be non-negative");
  const double eps = w / A;
  if (eps >= 0.5)
    throw RegimeError("w/A = " + std::to_string(eps) +
                      " is outside the first-order adiabatic regime (< 0.5)");
  RotatingFrameResult r;
  r.cone_deficit = eps;
  r.sigma3_expectation = w / (2.0 * A);
  // A * eps * <sigma3>-weight * period; the period diverges as w -> 0 while
  // the product stays at its limit pi.
  r.accumulated_phase = w > 0.0 ? A * eps * (2.0 * kPi / w) * 0.5 : kPi;
  return r;
}

qcore::HamiltonianSchedule latitude_schedule(double A, double w, double theta) {
  if (!(w > 0.0))
    throw ArgumentError("loop angular frequency must be positive");
  const double st = std::sin(theta), ct = std::cos(theta);
  return qcore::HamiltonianSchedule(
      [=](double t) {
        return qcore::pauli_dot(A * Vec3(st * std::cos(w * t), st * std::sin(w * t), ct));
      },
      2.0 * kPi / w);
}

qcore::HamiltonianSchedule equatorial_schedule(double A, double w) {
  return latitude_schedule(A, w, 0.5 * kPi);
}

qcore::StateVector spin_ground_state(const Vec3 &direction) {
  const auto es = qcore::instantaneous_eigensystem(qcore::pauli_dot(direction));
  if (es.degenerate)
    throw DegeneracyError("zero field: ground state undefined", 0);
  return qcore::StateVector::normalized(es.vectors[0]);
}

CMatrix spin_coupling(const Point &r) {
  if (r.size() != 3)
    throw ArgumentError("spin coupling expects a 3-vector");
  return qcore::pauli_dot(Vec3(r[0], r[1], r[2]));
}

} // namespace adiabat::berry
