#include "adiabat/topology.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "adiabat/errors.hpp"

namespace adiabat::topology {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Closest distance between segments [p0,p1] and [q0,q1].
double segment_distance(const Vec3 &p0, const Vec3 &p1, const Vec3 &q0, const Vec3 &q1) {
  const Vec3 d1 = p1 - p0, d2 = q1 - q0, r = p0 - q0;
  const double a = d1.squaredNorm(), e = d2.squaredNorm(), f = d2.dot(r);
  double s = 0.0, t = 0.0;
  if (a <= 1e-300 && e <= 1e-300)
    return r.norm();
  if (a <= 1e-300) {
    t = std::clamp(f / e, 0.0, 1.0);
  } else {
    const double c = d1.dot(r);
    if (e <= 1e-300) {
      s = std::clamp(-c / a, 0.0, 1.0);
    } else {
      const double b = d1.dot(d2);
      const double denom = a * e - b * b;
      s = denom > 0.0 ? std::clamp((b * f - c * e) / denom, 0.0, 1.0) : 0.0;
      t = (b * s + f) / e;
      if (t < 0.0) {
        t = 0.0;
        s = std::clamp(-c / a, 0.0, 1.0);
      } else if (t > 1.0) {
        t = 1.0;
        s = std::clamp((b - c) / a, 0.0, 1.0);
      }
    }
  }
  return ((p0 + s * d1) - (q0 + t * d2)).norm();
}

// Signed solid angle subtended by a pair of straight segments, divided by 4pi
// (Klenin & Langowski form of the Gauss integral for polylines).
double segment_pair_linking(const Vec3 &p1, const Vec3 &p2, const Vec3 &p3, const Vec3 &p4) {
  const Vec3 r13 = p3 - p1, r14 = p4 - p1, r23 = p3 - p2, r24 = p4 - p2;
  Vec3 n[4] = {r13.cross(r14), r14.cross(r24), r24.cross(r23), r23.cross(r13)};
  for (auto &v : n) {
    const double len = v.norm();
    if (len < 1e-300)
      return 0.0; // coplanar pair: no contribution
    v /= len;
  }
  double omega = 0.0;
  for (int i = 0; i < 4; ++i)
    omega += std::asin(std::clamp(n[i].dot(n[(i + 1) % 4]), -1.0, 1.0));
  const double orient = (p4 - p3).cross(p2 - p1).dot(r13);
  if (orient == 0.0)
    return 0.0;
  return (orient > 0.0 ? omega : -omega) / (4.0 * kPi);
}

} // namespace

Curve3D::Curve3D(std::vector<Vec3> points) : pts_(std::move(points)) {
  if (pts_.size() < 9)
    throw ArgumentError("curve needs at least eight distinct points plus the closing point");
  if ((pts_.front() - pts_.back()).norm() > 1e-12)
    throw ArgumentError("curve is not closed");
  pts_.back() = pts_.front();

  double extent = 0.0;
  for (const auto &p : pts_) {
    if (!p.allFinite())
      throw ArgumentError("curve has non-finite points");
    extent = std::max(extent, (p - pts_.front()).norm());
  }
  const std::size_t m = segment_count();
  for (std::size_t i = 0; i < m; ++i)
    if ((pts_[i + 1] - pts_[i]).norm() == 0.0)
      throw ArgumentError("curve has a zero-length segment at index " + std::to_string(i));
  const double tol = 1e-9 * extent;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 2; j < m; ++j) {
      if (i == 0 && j == m - 1)
        continue; // adjacent through the closing point
      if (segment_distance(pts_[i], pts_[i + 1], pts_[j], pts_[j + 1]) <= tol)
        throw GeometryError("curve intersects itself near segments " + std::to_string(i) +
                            " and " + std::to_string(j));
    }
}

double Curve3D::max_segment_length() const {
  double best = 0.0;
  for (std::size_t i = 0; i + 1 < pts_.size(); ++i)
    best = std::max(best, (pts_[i + 1] - pts_[i]).norm());
  return best;
}

Curve3D Curve3D::reversed() const { return Curve3D(std::vector<Vec3>(pts_.rbegin(), pts_.rend())); }

Curve3D Curve3D::transformed(const Eigen::Matrix3d &rotation, const Vec3 &shift,
                             double scale) const {
  std::vector<Vec3> out;
  out.reserve(pts_.size());
  for (const auto &p : pts_)
    out.push_back(scale * (rotation * p) + shift);
  out.back() = out.front();
  return Curve3D(std::move(out));
}

Curve3D circle(const Vec3 &center, const Vec3 &u, const Vec3 &v, double radius,
               std::size_t samples) {
  const Vec3 e1 = u.normalized();
  const Vec3 e2 = (v - v.dot(e1) * e1).normalized();
  std::vector<Vec3> pts;
  pts.reserve(samples + 1);
  for (std::size_t k = 0; k < samples; ++k) {
    const double t = 2.0 * kPi * static_cast<double>(k) / static_cast<double>(samples);
    pts.push_back(center + radius * (std::cos(t) * e1 + std::sin(t) * e2));
  }
  pts.push_back(pts.front());
  return Curve3D(std::move(pts));
}

Curve3D close_at_infinity(const std::vector<Vec3> &open, double reach) {
  if (open.size() < 2)
    throw ArgumentError("open curve needs at least two points");
  const Vec3 first = open.front(), last = open.back();
  const Vec3 out_end = (last - open[open.size() - 2]).normalized();
  const Vec3 out_start = (first - open[1]).normalized();
  // Side direction for the return leg, perpendicular to the exit direction.
  Vec3 side = out_end.cross(Vec3::UnitX());
  if (side.norm() < 0.1)
    side = out_end.cross(Vec3::UnitY());
  side.normalize();

  std::vector<Vec3> pts(open.begin(), open.end());
  const Vec3 a = last + reach * out_end;
  const Vec3 d = first + reach * out_start;
  pts.push_back(a);
  pts.push_back(a + reach * side);
  pts.push_back(d + reach * side);
  pts.push_back(d);
  pts.push_back(first);
  return Curve3D(std::move(pts));
}

double min_curve_distance(const Curve3D &a, const Curve3D &b) {
  double best = std::numeric_limits<double>::infinity();
  const auto &pa = a.points();
  const auto &pb = b.points();
  for (std::size_t i = 0; i + 1 < pa.size(); ++i)
    for (std::size_t j = 0; j + 1 < pb.size(); ++j)
      best = std::min(best, segment_distance(pa[i], pa[i + 1], pb[j], pb[j + 1]));
  return best;
}

double gauss_linking_sum(const Curve3D &a, const Curve3D &b) {
  const auto &pa = a.points();
  const auto &pb = b.points();
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < pa.size(); ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j + 1 < pb.size(); ++j)
      row += segment_pair_linking(pa[i], pa[i + 1], pb[j], pb[j + 1]);
    sum += row;
  }
  return sum;
}

int linking_number(const Curve3D &a, const Curve3D &b) {
  double scale = 0.0;
  for (const auto *c : {&a, &b})
    for (const auto &p : c->points())
      scale = std::max(scale, p.norm());
  if (!(min_curve_distance(a, b) > 1e-12 * std::max(scale, 1.0)))
    throw GeometryError("curves touch: linking number undefined");
  const double raw = gauss_linking_sum(a, b);
  const double rounded = std::round(raw);
  if (std::abs(raw - rounded) > 0.05)
    throw ResolutionError("Gauss sum " + std::to_string(raw) +
                          " is not close to an integer; refine the sampling");
  return static_cast<int>(rounded);
}

double topological_phase_predict(const Curve3D &probe, const Curve3D &cstar) {
  const int lk = linking_number(probe, cstar);
  return (std::abs(lk) % 2 == 1) ? kPi : 0.0;
}

DegeneracyCount degeneracy_count(int n) {
  if (n < 2)
    throw ArgumentError("degeneracy counting needs n >= 2 levels");
  DegeneracyCount c;
  c.n = n;
  c.parameter_dim = n * n - 1;
  c.real_codimension = n * (n + 1) / 2 - 1;
  c.degeneracy_dim = n * (n - 1) / 2;
  return c;
}

bool Box::contains(const Vec3 &p) const {
  return (p.array() >= lo.array()).all() && (p.array() <= hi.array()).all();
}

// ---------------------------------------------------------------------------
// Degeneracy-curve continuation

namespace {

struct Tracer {
  const RealFieldHamiltonian &h;
  double fd_step;

  Eigen::Vector2d value(const Vec3 &x) const { return {h.a1(x), h.a3(x)}; }

  Eigen::Matrix<double, 2, 3> jacobian(const Vec3 &x) const {
    Eigen::Matrix<double, 2, 3> j;
    for (int k = 0; k < 3; ++k) {
      Vec3 xp = x, xm = x;
      xp[k] += fd_step;
      xm[k] -= fd_step;
      j.col(k) = (value(xp) - value(xm)) / (2.0 * fd_step);
    }
    return j;
  }

  // Unit null vector of the Jacobian; throws if rank < 2.
  Vec3 tangent(const Vec3 &x) const {
    const auto j = jacobian(x);
    const Vec3 g1 = j.row(0).transpose(), g3 = j.row(1).transpose();
    const Vec3 t = g1.cross(g3);
    if (!(t.norm() > 1e-10 * std::max(g1.norm() * g3.norm(), 1e-300)))
      throw GeometryError("non-transversal zero set: Jacobian rank < 2 at (" +
                          std::to_string(x.x()) + ", " + std::to_string(x.y()) + ", " +
                          std::to_string(x.z()) + ")");
    return t.normalized();
  }

  // Minimum-norm Newton projection onto the zero set.
  bool correct(Vec3 &x) const {
    for (int it = 0; it < 30; ++it) {
      const Eigen::Vector2d f = value(x);
      if (!f.allFinite())
        return false;
      if (f.norm() < 1e-13)
        return true;
      const auto j = jacobian(x);
      const Eigen::Matrix2d jjt = j * j.transpose();
      if (std::abs(jjt.determinant()) < 1e-300)
        return false;
      x -= j.transpose() * (jjt.inverse() * f);
    }
    return value(x).norm() < 1e-11;
  }

  // Damped Newton in the plane where coordinate `fixed` is held constant.
  bool planar_root(Vec3 &x, int fixed) const {
    const int i0 = (fixed + 1) % 3, i1 = (fixed + 2) % 3;
    double fnorm = value(x).norm();
    for (int it = 0; it < 60; ++it) {
      if (fnorm < 1e-13)
        return true;
      const auto j = jacobian(x);
      Eigen::Matrix2d j2;
      j2 << j(0, i0), j(0, i1), j(1, i0), j(1, i1);
      if (std::abs(j2.determinant()) < 1e-14)
        return false;
      const Eigen::Vector2d step = -j2.lu().solve(value(x));
      double lambda = 1.0;
      bool improved = false;
      for (int ls = 0; ls < 30; ++ls) {
        Vec3 y = x;
        y[i0] += lambda * step[0];
        y[i1] += lambda * step[1];
        const double fy = value(y).norm();
        if (std::isfinite(fy) && fy < (1.0 - 1e-4 * lambda) * fnorm) {
          x = y;
          fnorm = fy;
          improved = true;
          break;
        }
        lambda *= 0.5;
      }
      if (!improved)
        return false;
    }
    return fnorm < 1e-11;
  }
};

} // namespace

TracedCurve degeneracy_curve(const RealFieldHamiltonian &h, const Box &box, double resolution) {
  if (!h.a1 || !h.a3)
    throw ArgumentError("both field components are required");
  if (!(resolution >= 4.0))
    throw ArgumentError("resolution must be at least 4 steps per box diagonal");
  if (!((box.hi - box.lo).array() > 0.0).all())
    throw ArgumentError("seed box must have positive extent");

  const double diag = box.diagonal();
  const Tracer tr{h, 1e-7 * diag};

  // Seed: first root found by planar Newton from a grid of starting points.
  constexpr int kSeeds = 7;
  Vec3 start;
  bool found = false;
  for (int fixed = 0; fixed < 3 && !found; ++fixed)
    for (int i = 0; i < kSeeds && !found; ++i)
      for (int j = 0; j < kSeeds && !found; ++j)
        for (int k = 0; k < kSeeds && !found; ++k) {
          const Vec3 frac((i + 0.5) / kSeeds, (j + 0.5) / kSeeds, (k + 0.5) / kSeeds);
          Vec3 x = box.lo + frac.cwiseProduct(box.hi - box.lo);
          if (tr.planar_root(x, fixed) && box.contains(x) && tr.correct(x) && box.contains(x)) {
            start = x;
            found = true;
          }
        }
  if (!found)
    throw NotFoundError("no point of the degeneracy curve found in the seed box");

  const double base_step = diag / resolution;
  constexpr int kMaxHalvings = 10;
  constexpr std::size_t kMaxPoints = 1000000;

  // March from `start` along `dir`; returns points after the start and whether
  // the trace came back to the start.
  auto march = [&](const Vec3 &dir0, std::vector<Vec3> &out) -> bool {
    Vec3 x = start;
    Vec3 t = tr.tangent(x);
    if (t.dot(dir0) < 0.0)
      t = -t;
    double step = base_step;
    double travelled = 0.0;
    while (out.size() < kMaxPoints) {
      int halvings = 0;
      Vec3 y;
      Vec3 ty;
      for (;;) {
        y = x + step * t;
        bool ok = tr.correct(y);
        if (ok) {
          ty = tr.tangent(y);
          if (ty.dot(t) < 0.0)
            ty = -ty;
          const double moved = (y - x).norm();
          ok = moved < 2.0 * step && moved > 0.25 * step && ty.dot(t) > std::cos(0.5);
        }
        if (ok)
          break;
        if (++halvings > kMaxHalvings)
          throw GeometryError("continuation failed: step halved more than 10 times");
        step *= 0.5;
      }
      travelled += (y - x).norm();
      if (travelled > 3.0 * base_step && (y - start).norm() < 0.75 * step) {
        out.push_back(start);
        return true;
      }
      if (travelled > 3.0 * base_step && (y - start).norm() < 1.25 * step) {
        out.push_back(y);
        out.push_back(start);
        return true;
      }
      if (!box.contains(y))
        return false;
      out.push_back(y);
      x = y;
      t = ty;
      step = std::min(2.0 * step, base_step);
    }
    throw GeometryError("continuation exceeded the point budget");
  };

  const Vec3 t0 = tr.tangent(start);
  std::vector<Vec3> forward;
  TracedCurve curve;
  if (march(t0, forward)) {
    curve.points.push_back(start);
    curve.points.insert(curve.points.end(), forward.begin(), forward.end());
    curve.closed = true;
    return curve;
  }
  std::vector<Vec3> backward;
  if (march(-t0, backward))
    throw GeometryError("inconsistent trace: closed backwards but not forwards");
  curve.points.assign(backward.rbegin(), backward.rend());
  curve.points.push_back(start);
  curve.points.insert(curve.points.end(), forward.begin(), forward.end());
  curve.closed = false;
  return curve;
}

} // namespace adiabat::topology
