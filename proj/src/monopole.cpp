// Field angular momentum of a charge/monopole pair on a graded spherical grid.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "adiabat/berry.hpp"
#include "adiabat/errors.hpp"
#include "quadrature.hpp"

namespace adiabat::berry {

namespace {

using qcore::kPi;

struct Panel {
  double a, b;
};

// Integrand r x (E x B) in the frame where the charge sits on +z at distance R.
Vec3 integrand(const Vec3 &r, double e, double g, double R) {
  const Vec3 s = r - Vec3(0.0, 0.0, R);
  const double sn = s.norm(), rn = r.norm();
  const Vec3 E = e * s / (sn * sn * sn);
  const Vec3 B = g * r / (rn * rn * rn);
  return r.cross(E.cross(B));
}

// Graded breakpoints in polar angle starting at `lo`, with first width `scale`.
std::vector<double> polar_breaks(double lo, double scale) {
  std::vector<double> br{lo};
  double w = scale;
  while (br.back() + w < kPi) {
    br.push_back(br.back() + w);
    w *= 2.0;
  }
  br.push_back(kPi);
  return br;
}

// Integrates over the full sphere of polar angles [theta_lo, pi] at radius r.
// Returns the shell integral of the integrand times r^2 sin(theta).
Vec3 shell(double r, double theta_lo, double e, double g, double R, const detail::GaussRule &rule,
           int nphi, double delta) {
  const double scale = 0.25 * std::max(std::abs(r - R), delta) / R;
  const auto br = polar_breaks(theta_lo, scale);
  Vec3 acc = Vec3::Zero();
  const double dphi = 2.0 * kPi / nphi;
  for (std::size_t p = 0; p + 1 < br.size(); ++p) {
    detail::for_each_node(rule, br[p], br[p + 1], [&](double th, double wt) {
      const double st = std::sin(th), ct = std::cos(th);
      Vec3 ring = Vec3::Zero();
      for (int k = 0; k < nphi; ++k) {
        const double ph = (k + 0.5) * dphi;
        const Vec3 x(r * st * std::cos(ph), r * st * std::sin(ph), r * ct);
        ring += integrand(x, e, g, R);
      }
      acc += wt * st * dphi * ring;
    });
  }
  return r * r * acc;
}

Vec3 integrate(double e, double g, double R, int nodes, int nphi, double excision) {
  const auto rule = detail::gauss_legendre(nodes);
  const double delta = excision * R;
  Vec3 total = Vec3::Zero();

  auto add_panel = [&](double a, double b) {
    detail::for_each_node(rule, a, b, [&](double r, double w) {
      total += w * shell(r, 0.0, e, g, R, rule, nphi, delta);
    });
  };

  // Inside the charge radius, graded towards r = R - delta.
  std::vector<Panel> inner;
  double d = delta;
  while (R - 2.0 * d > delta && d < 0.25 * R) {
    inner.push_back({R - 2.0 * d, R - d});
    d *= 2.0;
  }
  inner.push_back({delta, R - d});
  for (const auto &p : inner)
    add_panel(p.a, p.b);

  // Shell through the excised ball around the charge: r = R + delta sin(s),
  // which keeps the cut-off polar angle smooth in s.
  detail::for_each_node(rule, -0.5 * kPi, 0.5 * kPi, [&](double s, double w) {
    const double r = R + delta * std::sin(s);
    const double c = std::clamp((r * r + R * R - delta * delta) / (2.0 * r * R), -1.0, 1.0);
    total += w * delta * std::cos(s) * shell(r, std::acos(c), e, g, R, rule, nphi, delta);
  });

  // Outside, graded away from R + delta up to 2R.
  d = delta;
  while (d < R) {
    add_panel(R + d, R + std::min(2.0 * d, R));
    d *= 2.0;
  }

  // Tail r in [2R, inf) through r = 2R / u.
  for (const Panel &p : {Panel{0.0, 0.25}, Panel{0.25, 0.5}, Panel{0.5, 1.0}}) {
    detail::for_each_node(rule, p.a, p.b, [&](double u, double w) {
      const double r = 2.0 * R / u;
      total += w * (2.0 * R / (u * u)) * shell(r, 0.0, e, g, R, rule, nphi, delta);
    });
  }
  return total / (4.0 * kPi);
}

} // namespace

MonopoleResult monopole_field_angular_momentum(double e, double g, double R, const Vec3 &n,
                                               const MonopoleQuadrature &quad) {
  if (!(R > 0.0))
    throw ArgumentError("charge-monopole separation must be positive");
  if (!(n.norm() > 0.0))
    throw ArgumentError("direction must be non-zero");
  if (quad.nodes_per_panel < 2 || quad.azimuth_nodes < 4 || !(quad.excision > 0.0) ||
      quad.excision >= 0.25)
    throw ArgumentError("invalid monopole quadrature settings");

  const Vec3 z = n.normalized();
  const Vec3 helper = std::abs(z.z()) < 0.9 ? Vec3::UnitZ() : Vec3::UnitX();
  const Vec3 x = helper.cross(z).normalized();
  const Vec3 y = z.cross(x);

  const Vec3 base = integrate(e, g, R, quad.nodes_per_panel, quad.azimuth_nodes, quad.excision);
  const Vec3 finer =
      integrate(e, g, R, 2 * quad.nodes_per_panel, quad.azimuth_nodes, quad.excision);
  const Vec3 smaller_hole =
      integrate(e, g, R, quad.nodes_per_panel, quad.azimuth_nodes, 0.5 * quad.excision);

  const double scale = std::max(base.norm(), 1e-300);
  const double change =
      std::max((finer - base).norm(), (smaller_hole - base).norm()) / scale;
  if (change > quad.tolerance)
    throw AccuracyError("monopole quadrature did not converge under refinement (change " +
                        std::to_string(change) + ")");

  MonopoleResult res;
  res.angular_momentum = base.x() * x + base.y() * y + base.z() * z;
  res.magnitude = res.angular_momentum.norm();
  res.refinement_change = change;
  return res;
}

} // namespace adiabat::berry
