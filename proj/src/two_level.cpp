// Two-level sweeps and the rectangular loop around a real level crossing.

#include <algorithm>
#include <cmath>

#include "adiabat/analogs.hpp"
#include "adiabat/berry.hpp"
#include "adiabat/errors.hpp"
#include "adiabat/qcore.hpp"

namespace adiabat::analogs {

namespace {

using qcore::CMatrix;
using qcore::Complex;
using qcore::CVector;
using qcore::kPi;

CMatrix crossing_hamiltonian(double delta, double eps) {
  return qcore::pauli_dot(qcore::Vec3(eps, 0.0, delta));
}

} // namespace

TwoLevelResult two_level_sweep(const TwoLevelSweep &s) {
  if (!(s.epsilon >= 0.0) || !(s.alpha > 0.0) || !(s.delta_max >= 0.0) || !(s.step >= 0.0))
    throw ArgumentError("two-level sweep needs epsilon >= 0, alpha > 0");
  const double dmax = s.delta_max > 0.0 ? s.delta_max : 40.0 * std::max(s.epsilon, std::sqrt(s.alpha));
  const double duration = 2.0 * dmax / s.alpha;
  const double hmax = std::hypot(s.epsilon, dmax);
  const double step = s.step > 0.0 ? s.step : 0.09 / hmax;

  const qcore::HamiltonianSchedule schedule(
      [=](double t) { return crossing_hamiltonian(s.alpha * t - dmax, s.epsilon); }, duration);
  const auto first = qcore::instantaneous_eigensystem(crossing_hamiltonian(-dmax, s.epsilon));
  const auto last = qcore::instantaneous_eigensystem(crossing_hamiltonian(dmax, s.epsilon));
  const auto psi = qcore::evolve(schedule, qcore::StateVector(first.vectors[0]), step);

  TwoLevelResult r;
  r.conversion = std::norm(last.vectors[0].dot(psi.amplitudes()));
  r.flavor_conversion = std::norm(psi[1]);
  r.survival = 1.0 - r.conversion;
  r.landau_zener = 1.0 - std::exp(-kPi * s.epsilon * s.epsilon / s.alpha);
  r.duration = duration;
  return r;
}

RectangleLoopResult rectangular_loop_phase(double epsilon0, double delta0, std::size_t samples,
                                           double offset, bool transport, double adiabaticity) {
  if (!(epsilon0 > 0.0) || !(delta0 > 0.0) || !(adiabaticity > 0.0))
    throw ArgumentError("rectangle needs epsilon0, delta0, adiabaticity > 0");
  if (samples < 8)
    throw ArgumentError("rectangle needs at least 8 samples");

  RectangleLoopResult res;
  if (delta0 < 10.0 * epsilon0) {
    res.regime_warning = true;
    res.warning = "corners close to resonance: delta0 < 10 epsilon0";
  }

  // Corners in traversal order, starting at S = (-delta0, +epsilon0).
  const double x0 = offset - delta0, x1 = offset + delta0;
  const berry::Point corners[4] = {berry::Point{{x0, epsilon0}}, berry::Point{{x1, epsilon0}},
                                   berry::Point{{x1, -epsilon0}}, berry::Point{{x0, -epsilon0}}};
  const double perimeter = 4.0 * (delta0 + epsilon0);
  std::vector<berry::Point> pts;
  for (int e = 0; e < 4; ++e) {
    const berry::Point &a = corners[e];
    const berry::Point &b = corners[(e + 1) % 4];
    const double len = (b - a).norm();
    const auto n = std::max<std::size_t>(2, static_cast<std::size_t>(
                                                std::llround(samples * len / perimeter)));
    for (std::size_t k = 0; k < n; ++k)
      pts.push_back(a + (b - a) * (static_cast<double>(k) / n));
  }
  pts.push_back(pts.front());
  const berry::ParameterLoop loop(std::move(pts), true);
  res.wilson_phase = berry::wilson_loop_phase(
      [](const berry::Point &p) { return crossing_hamiltonian(p[0], p[1]); }, loop, 0);

  // The sigma2 symmetry behind the half-loop check needs a centred rectangle.
  if (!transport || offset != 0.0)
    return res;

  // Speed k |h|^2 along each edge integrates in closed form to tangents.
  const double k = adiabaticity;
  const double a_top = std::atan(delta0 / epsilon0), a_side = std::atan(epsilon0 / delta0);
  const double top = 2.0 * a_top / (k * epsilon0);
  const double side = 2.0 * a_side / (k * delta0);
  auto path = [=](double t) -> std::pair<double, double> {
    t = std::clamp(t, 0.0, 2.0 * (top + side));
    if (t <= top)
      return {epsilon0 * std::tan(k * epsilon0 * t - a_top), epsilon0};
    t -= top;
    if (t <= side)
      return {x1, delta0 * std::tan(a_side - k * delta0 * t)};
    t -= side;
    if (t <= top)
      return {-epsilon0 * std::tan(k * epsilon0 * t - a_top), -epsilon0};
    t -= top;
    return {x0, -delta0 * std::tan(a_side - k * delta0 * t)};
  };
  auto h_at = [=](double t) {
    const auto [d, e] = path(t);
    return crossing_hamiltonian(d, e);
  };
  const double hmax = std::hypot(delta0, epsilon0);
  const double step = std::min(0.0099, 0.099 / hmax);

  const qcore::HamiltonianSchedule full(h_at, 2.0 * (top + side));
  const qcore::HamiltonianSchedule half(h_at, top + side);
  const auto start = qcore::instantaneous_eigensystem(crossing_hamiltonian(x0, epsilon0));
  const qcore::StateVector us(start.vectors[0]);

  const auto dec = qcore::phase_decompose(full, us, step);
  res.dynamical_phase = dec.dynamical;
  // sigma2 maps H(Delta, eps) to H(-Delta, -eps), so both halves carry the
  // same dynamical phase and U_full = (sigma2 U_half)^2.
  const CMatrix u1 = qcore::propagator(half, step);
  const CMatrix t_op = qcore::sigma2() * u1 * std::exp(Complex(0.0, -0.5 * dec.dynamical));
  res.t_squared = us.amplitudes().dot(t_op * t_op * us.amplitudes());
  res.half_loop_error = std::abs(res.t_squared + 1.0);
  return res;
}

} // namespace adiabat::analogs
