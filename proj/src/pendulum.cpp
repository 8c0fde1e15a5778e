// Linearised coupled pendulums with a time-dependent "e" length.

#include <algorithm>
#include <array>
#include <limits>
#include <cmath>
#include <string>

#include <Eigen/Dense>
#include <boost/numeric/odeint.hpp>

#include "adiabat/analogs.hpp"
#include "adiabat/errors.hpp"
#include "adiabat/parallel.hpp"

namespace adiabat::analogs {

namespace {

namespace ode = boost::numeric::odeint;
using State = std::array<double, 4>; // theta_e, v_e, theta_mu, v_mu

constexpr double kPi = 3.14159265358979323846;
constexpr double kTol = 1e-12;

struct Frozen {
  double we2, wm2, kappa;

  Eigen::Matrix2d stiffness() const {
    Eigen::Matrix2d k;
    k << we2 + kappa, -kappa, -kappa, wm2 + kappa;
    return k;
  }

  double energy(const State &x) const {
    const Eigen::Vector2d th(x[0], x[2]), v(x[1], x[3]);
    return 0.5 * v.squaredNorm() + 0.5 * th.dot(stiffness() * th);
  }
};

template <class Rhs>
void integrate(Rhs &&rhs, State &x, double t0, double t1) {
  if (t1 <= t0)
    return;
  auto stepper = ode::make_controlled(kTol, kTol, ode::runge_kutta_fehlberg78<State>());
  ode::integrate_adaptive(stepper, rhs, x, t0, t1, std::min(0.05, t1 - t0));
}

void validate(const PendulumSystem &sys) {
  if (!(sys.g > 0.0) || !(sys.l_mu > 0.0) || !(sys.kappa >= 0.0))
    throw ArgumentError("pendulum needs g, l_mu > 0 and kappa >= 0");
  if (!sys.l_e)
    throw ArgumentError("pendulum needs an l_e schedule");
}

} // namespace

PendulumSystem linear_frequency_sweep(double g, double l_mu, double kappa, double span,
                                      double duration) {
  if (!(g > 0.0) || !(l_mu > 0.0) || !(duration > 0.0) || !(span >= 0.0))
    throw ArgumentError("frequency sweep needs g, l_mu, duration > 0 and span >= 0");
  const double wm = std::sqrt(g / l_mu);
  if (!(span < wm))
    throw ArgumentError("frequency sweep span must stay below omega_mu");
  const double rate = 2.0 * span / duration;
  PendulumSystem sys;
  sys.g = g;
  sys.l_mu = l_mu;
  sys.kappa = kappa;
  auto omega = [=](double t) { return wm - span + rate * std::clamp(t, 0.0, duration); };
  sys.l_e = [=](double t) {
    const double w = omega(t);
    return g / (w * w);
  };
  sys.l_e_dot = [=](double t) {
    if (t < 0.0 || t > duration)
      return 0.0;
    const double w = omega(t);
    return -2.0 * g * rate / (w * w * w);
  };
  return sys;
}

PendulumResult pendulum_sweep(const PendulumSystem &sys, double duration, std::size_t samples,
                              double tail_periods) {
  validate(sys);
  if (!(duration >= 0.0) || samples < 1 || !(tail_periods > 0.0))
    throw ArgumentError("pendulum sweep needs duration >= 0, samples >= 1, tail_periods > 0");
  for (double t : {0.0, 0.5 * duration, duration})
    if (!(sys.l_e(t) > 0.0))
      throw ArgumentError("pendulum length must stay positive");

  const double wm2 = sys.g / sys.l_mu;
  auto rhs = [&](const State &x, State &dx, double t) {
    const double le = sys.l_e(t);
    const double drag = (sys.parametric_term && sys.l_e_dot) ? 2.0 * sys.l_e_dot(t) / le : 0.0;
    dx[0] = x[1];
    dx[1] = -(sys.g / le) * x[0] - drag * x[1] - sys.kappa * (x[0] - x[2]);
    dx[2] = x[3];
    dx[3] = -wm2 * x[2] - sys.kappa * (x[2] - x[0]);
  };

  PendulumResult res;
  res.epsilon = sys.kappa / (2.0 * std::sqrt(wm2));
  if (sys.l_e_dot) {
    // |d omega_e / dt| where omega_e crosses omega_mu (sampled on a grid).
    double best = std::numeric_limits<double>::infinity();
    for (int k = 0; k <= 1000; ++k) {
      const double t = duration * k / 1000.0;
      const double le = sys.l_e(t);
      const double gap = std::abs(std::sqrt(sys.g / le) - std::sqrt(wm2));
      if (gap < best) {
        best = gap;
        res.max_rate = std::abs(0.5 * std::sqrt(sys.g / le) * sys.l_e_dot(t) / le);
      }
    }
  }

  State x{1.0, 0.0, 0.0, 0.0};
  auto record = [&](double t) {
    const double le = sys.l_e(std::min(t, duration));
    res.series.push_back({t, 0.5 * x[1] * x[1] + 0.5 * (sys.g / le) * x[0] * x[0],
                          0.5 * x[3] * x[3] + 0.5 * wm2 * x[2] * x[2]});
  };
  record(0.0);
  for (std::size_t k = 1; k <= samples; ++k) {
    const double t0 = duration * static_cast<double>(k - 1) / samples;
    const double t1 = duration * static_cast<double>(k) / samples;
    integrate(rhs, x, t0, t1);
    record(t1);
  }

  const Frozen fin{sys.g / sys.l_e(duration), wm2, sys.kappa};
  auto frozen_rhs = [&](const State &s, State &ds, double) {
    ds[0] = s[1];
    ds[1] = -fin.we2 * s[0] - fin.kappa * (s[0] - s[2]);
    ds[2] = s[3];
    ds[3] = -fin.wm2 * s[2] - fin.kappa * (s[2] - s[0]);
  };
  const double tail = tail_periods * 2.0 * kPi / std::sqrt(std::min(fin.we2, fin.wm2));
  const double e0 = fin.energy(x);
  integrate(frozen_rhs, x, duration, duration + tail);
  const double e1 = fin.energy(x);
  res.frozen_energy_drift = std::abs(e1 - e0) / e0;
  if (res.frozen_energy_drift > 1e-6)
    throw DynamicsError("pendulum energy drifted by " + std::to_string(res.frozen_energy_drift) +
                        " with frozen lengths");
  record(duration + tail);

  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(fin.stiffness());
  const Eigen::Matrix2d U = es.eigenvectors();
  const Eigen::Vector2d q = U.transpose() * Eigen::Vector2d(x[0], x[2]);
  const Eigen::Vector2d qd = U.transpose() * Eigen::Vector2d(x[1], x[3]);
  double mode_energy[2], total = 0.0;
  for (int k = 0; k < 2; ++k) {
    mode_energy[k] = 0.5 * (qd[k] * qd[k] + es.eigenvalues()[k] * q[k] * q[k]);
    total += mode_energy[k];
  }
  const int mu_mode = std::abs(U(1, 0)) > std::abs(U(1, 1)) ? 0 : 1;
  res.transfer_fraction = mode_energy[mu_mode] / total;
  return res;
}

double pendulum_energy_drift(double g, double l_e, double l_mu, double kappa, double periods) {
  if (!(g > 0.0) || !(l_e > 0.0) || !(l_mu > 0.0) || !(kappa >= 0.0) || !(periods > 0.0))
    throw ArgumentError("pendulum energy drift needs positive parameters");
  const Frozen f{g / l_e, g / l_mu, kappa};
  auto rhs = [&](const State &x, State &dx, double) {
    dx[0] = x[1];
    dx[1] = -f.we2 * x[0] - kappa * (x[0] - x[2]);
    dx[2] = x[3];
    dx[3] = -f.wm2 * x[2] - kappa * (x[2] - x[0]);
  };
  State x{1.0, 0.0, 0.0, 0.0};
  const double e0 = f.energy(x);
  integrate(rhs, x, 0.0, periods * 2.0 * kPi / std::sqrt(std::min(f.we2, f.wm2)));
  return std::abs(f.energy(x) - e0) / e0;
}

RateLadder pendulum_rate_ladder(const std::vector<double> &rates, double kappa, unsigned jobs) {
  if (rates.empty())
    throw ArgumentError("rate ladder needs at least one rate");
  for (double c : rates)
    if (!(c > 0.0))
      throw ArgumentError("sweep rates must be positive");
  if (!(kappa > 0.0))
    throw ArgumentError("rate ladder needs kappa > 0");
  const double eps = kappa / 2.0; // g = l_mu = 1
  const double span = 25.0 * eps;

  RateLadder ladder;
  ladder.rates = rates;
  ladder.fractions = parallel_map(rates.size(), jobs, [&](std::size_t i) {
    const double duration = 2.0 * span / (rates[i] * eps * eps);
    return pendulum_sweep(linear_frequency_sweep(1.0, 1.0, kappa, span, duration), duration, 1)
        .transfer_fraction;
  });

  std::vector<std::size_t> order(rates.size());
  for (std::size_t i = 0; i < order.size(); ++i)
    order[i] = i;
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return rates[a] > rates[b]; });
  ladder.monotone = true;
  for (std::size_t k = 1; k < order.size(); ++k)
    if (!(ladder.fractions[order[k]] > ladder.fractions[order[k - 1]]))
      ladder.monotone = false;
  return ladder;
}

} // namespace adiabat::analogs
