// Planet around a fixed Sun, perturbed by an outer body on a prescribed
// circular orbit (G = 1).

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include <boost/numeric/odeint.hpp>

#include "adiabat/analogs.hpp"
#include "adiabat/errors.hpp"
#include "adiabat/parallel.hpp"

namespace adiabat::analogs {

namespace {

namespace ode = boost::numeric::odeint;
using State = std::array<double, 4>; // x, y, vx, vy

constexpr double kPi = 3.14159265358979323846;
constexpr int kSamplesPerOrbit = 64;
constexpr int kFrozenOrbits = 8;

struct Field {
  double M_sun, M_j, R_j;
  double phi0, omega; // outer body angle phi0 + omega t (omega = 0: frozen)

  void operator()(const State &s, State &ds, double t) const {
    const double r2 = s[0] * s[0] + s[1] * s[1];
    const double r3 = r2 * std::sqrt(r2);
    ds[0] = s[2];
    ds[1] = s[3];
    ds[2] = -M_sun * s[0] / r3;
    ds[3] = -M_sun * s[1] / r3;
    if (M_j != 0.0) {
      const double ph = phi0 + omega * t;
      const double dx = s[0] - R_j * std::cos(ph), dy = s[1] - R_j * std::sin(ph);
      const double d2 = dx * dx + dy * dy;
      const double d3 = d2 * std::sqrt(d2);
      ds[2] -= M_j * dx / d3;
      ds[3] -= M_j * dy / d3;
    }
  }
};

State perihelion_start(const CelestialConfig &cfg) {
  const double e = cfg.eccentricity;
  const double rp = cfg.R_e * (1.0 - e);
  const double vp = std::sqrt(cfg.M_sun * (1.0 + e) / (cfg.R_e * (1.0 - e)));
  return {rp, 0.0, 0.0, vp};
}

// Osculating mean longitude about the Sun, in (-pi, pi].
double mean_longitude(const State &s, double mu) {
  const double r = std::hypot(s[0], s[1]);
  const double v2 = s[2] * s[2] + s[3] * s[3];
  const double rv = s[0] * s[2] + s[1] * s[3];
  const double a = 1.0 / (2.0 / r - v2 / mu);
  if (!(a > 0.0))
    throw DynamicsError("planet is unbound");
  const double ex = ((v2 - mu / r) * s[0] - rv * s[2]) / mu;
  const double ey = ((v2 - mu / r) * s[1] - rv * s[3]) / mu;
  const double ecosE = 1.0 - r / a;
  const double esinE = rv / std::sqrt(mu * a);
  const double E = std::atan2(esinE, ecosE);
  const double varpi = std::atan2(ey, ex);
  return std::remainder(varpi + E - esinE, 2.0 * kPi);
}

// Adaptive RK78 march that lands exactly on requested sample times.
class Marcher {
public:
  Marcher(const Field &f, const CelestialConfig &cfg, double direction)
      : f_(f), cfg_(cfg), x_(perihelion_start(cfg)), dir_(direction),
        stepper_(ode::make_controlled(cfg.tolerance, cfg.tolerance,
                                      ode::runge_kutta_fehlberg78<State>())),
        dt_(direction * 1e-3 * cfg.kepler_period()) {}

  const State &state() const { return x_; }

  void advance_to(double t) {
    while (dir_ * (t - t_) > 0.0) {
      double h = dt_;
      const bool clamped = dir_ * (t_ + h - t) > 0.0;
      if (clamped)
        h = t - t_;
      double tt = t_;
      int tries = 0;
      while (stepper_.try_step(f_, x_, tt, h) == ode::fail)
        if (++tries > 500)
          throw DynamicsError("step size control failed");
      t_ = std::abs(t - tt) <= 1e-13 * std::max(1.0, std::abs(t)) ? t : tt;
      if (!clamped || tries > 0)
        dt_ = h;
      check();
    }
  }

private:
  void check() const {
    const double r = std::hypot(x_[0], x_[1]);
    const double ph = f_.phi0 + f_.omega * t_;
    const double dj = std::hypot(x_[0] - cfg_.R_j * std::cos(ph), x_[1] - cfg_.R_j * std::sin(ph));
    if (r < 0.01 * cfg_.R_e || (f_.M_j != 0.0 && dj < 0.01 * cfg_.R_e))
      throw DynamicsError("collision: planet came within 0.01 R_e of a body");
    if (r > 0.5 * (cfg_.R_e + cfg_.R_j))
      throw DynamicsError("planet escaped towards the outer body");
  }

  Field f_;
  const CelestialConfig &cfg_;
  State x_;
  double t_ = 0.0;
  double dir_;
  decltype(ode::make_controlled(1.0, 1.0, ode::runge_kutta_fehlberg78<State>())) stepper_;
  double dt_;
};

struct Track {
  std::vector<double> lambda; // unwrapped mean longitude
  std::vector<double> action; // osculating sqrt(mu a)
};

// Samples at t = k * span / count, k = 0..count.
Track longitude_track(const Field &field, const CelestialConfig &cfg, double span,
                      std::size_t count) {
  Marcher m(field, cfg, span >= 0.0 ? 1.0 : -1.0);
  Track tr;
  tr.lambda.resize(count + 1);
  tr.action.resize(count + 1);
  auto action = [&](const State &s) {
    const double r = std::hypot(s[0], s[1]);
    const double v2 = s[2] * s[2] + s[3] * s[3];
    return std::sqrt(cfg.M_sun / (2.0 / r - v2 / cfg.M_sun));
  };
  tr.lambda[0] = mean_longitude(m.state(), cfg.M_sun);
  tr.action[0] = action(m.state());
  for (std::size_t k = 1; k <= count; ++k) {
    m.advance_to(span * static_cast<double>(k) / count);
    const double raw = mean_longitude(m.state(), cfg.M_sun);
    tr.lambda[k] = tr.lambda[k - 1] + std::remainder(raw - tr.lambda[k - 1], 2.0 * kPi);
    tr.action[k] = action(m.state());
  }
  return tr;
}

struct FrozenMeasure {
  double rate;   // <d lambda / dt>
  double action; // <sqrt(mu a)>
};

// Bump-weighted averages over [-span, span] of the frozen motion from the
// start state. The weight vanishes to all orders at both ends, so
// quasi-periodic wiggles average out faster than any power of the window.
FrozenMeasure frozen_measure(const CelestialConfig &cfg, double phi, int orbits) {
  const Field field{cfg.M_sun, cfg.M_j, cfg.R_j, phi, 0.0};
  const double span = orbits * cfg.kepler_period();
  const auto count = static_cast<std::size_t>(orbits) * kSamplesPerOrbit;
  const auto fwd = longitude_track(field, cfg, span, count);
  const auto bwd = longitude_track(field, cfg, -span, count);

  const double h = span / count;
  auto weight = [&](double t) {
    const double s = 0.5 * (t / span + 1.0);
    return (s <= 0.0 || s >= 1.0) ? 0.0 : std::exp(-1.0 / (s * (1.0 - s)));
  };
  double num = 0.0, den = 0.0, act = 0.0;
  for (std::size_t k = 0; k < count; ++k) {
    const double wf = weight((k + 0.5) * h), wb = weight(-(k + 0.5) * h);
    num += wf * (fwd.lambda[k + 1] - fwd.lambda[k]) + wb * (bwd.lambda[k] - bwd.lambda[k + 1]);
    act += 0.5 * (wf * (fwd.action[k] + fwd.action[k + 1]) + wb * (bwd.action[k] + bwd.action[k + 1]));
    den += wf + wb;
  }
  const double rate = num / (den * h);
  if (!(rate > 0.0))
    throw DynamicsError("mean longitude does not advance");
  return {rate, act / den};
}

// Frozen rate at phi, shifted to the adiabatic invariant `action` through
// d n / d Lambda = -3 mu^2 / Lambda^4.
double rate_at_action(const CelestialConfig &cfg, double phi, int orbits, double action) {
  const auto m = frozen_measure(cfg, phi, orbits);
  const double mu2 = cfg.M_sun * cfg.M_sun;
  return m.rate - 3.0 * mu2 / std::pow(m.action, 4) * (action - m.action);
}

struct ResidualParts {
  double full, adiabatic;
};

ResidualParts residual_parts(const CelestialConfig &cfg, int periods, int nodes, unsigned jobs) {
  const double Tj = cfg.jupiter_period();
  const double invariant = frozen_measure(cfg, cfg.phi0, kFrozenOrbits).action;
  const auto rates = parallel_map(static_cast<std::size_t>(nodes), jobs, [&](std::size_t j) {
    return rate_at_action(cfg, cfg.phi0 + 2.0 * kPi * j / nodes, kFrozenOrbits, invariant);
  });
  double mean_rate = 0.0;
  for (double w : rates)
    mean_rate += w / nodes;

  const double elapsed = periods * Tj;
  const Field field{cfg.M_sun, cfg.M_j, cfg.R_j, cfg.phi0, 2.0 * kPi / Tj};
  const auto count = static_cast<std::size_t>(
      std::ceil(elapsed / cfg.kepler_period() * kSamplesPerOrbit));
  const auto track = longitude_track(field, cfg, elapsed, count);
  return {track.lambda.back() - track.lambda.front(), mean_rate * elapsed};
}

} // namespace

double CelestialConfig::jupiter_period() const {
  return T_j > 0.0 ? T_j : 2.0 * kPi * std::sqrt(R_j * R_j * R_j / M_sun);
}

double CelestialConfig::kepler_period() const {
  return 2.0 * kPi * std::sqrt(R_e * R_e * R_e / M_sun);
}

void CelestialConfig::validate() const {
  if (!(M_sun > 0.0) || !(M_j >= 0.0) || !(R_e > 0.0) || !(R_j > R_e) || !(T_j >= 0.0))
    throw ArgumentError("celestial config needs M_sun, R_e > 0, M_j >= 0, R_j > R_e");
  if (!(eccentricity >= 0.0 && eccentricity < 1.0))
    throw ArgumentError("eccentricity must lie in [0, 1)");
  if (!(tolerance > 0.0 && tolerance < 1e-3))
    throw ArgumentError("integration tolerance must lie in (0, 1e-3)");
}

double force_ratio(const CelestialConfig &cfg) {
  cfg.validate();
  const double gap = cfg.R_j - cfg.R_e;
  return cfg.M_j / cfg.M_sun * cfg.R_e * cfg.R_e / (gap * gap);
}

double celestial_frozen_period(const CelestialConfig &cfg, double phi, int orbits) {
  cfg.validate();
  if (orbits < 1)
    throw ArgumentError("need at least one orbit");
  const double invariant = frozen_measure(cfg, cfg.phi0, orbits).action;
  return 2.0 * kPi / rate_at_action(cfg, phi, orbits, invariant);
}

CelestialResidual celestial_adiabatic_residual(const CelestialConfig &cfg, int periods,
                                               int phi_nodes, unsigned jobs) {
  cfg.validate();
  if (periods < 1)
    throw ArgumentError("need at least one outer period");
  if (phi_nodes < 8)
    throw ArgumentError("need at least 8 angle nodes");
  if (!(cfg.jupiter_period() >= 5.0 * cfg.kepler_period()))
    throw ArgumentError("outer period must be at least 5 inner periods");

  const auto coarse = residual_parts(cfg, periods, phi_nodes, jobs);
  CelestialConfig tight = cfg;
  tight.tolerance = cfg.tolerance / 100.0;
  const auto fine = residual_parts(tight, periods, phi_nodes, jobs);

  CelestialResidual r;
  r.elapsed = periods * cfg.jupiter_period();
  r.full_phase = coarse.full;
  r.adiabatic_phase = coarse.adiabatic;
  r.kepler_phase = 2.0 * kPi * r.elapsed / cfg.kepler_period();
  r.residual = coarse.full - coarse.adiabatic;
  r.residual_per_cycle = r.residual / periods;
  r.dynamical_per_cycle = (r.adiabatic_phase - r.kepler_phase) / periods;
  r.refinement_change = std::abs((fine.full - fine.adiabatic) - r.residual);
  if (r.refinement_change > 0.05 * std::abs(r.residual) + 1e-7)
    throw AccuracyError("celestial residual changed by " + std::to_string(r.refinement_change) +
                        " under tolerance refinement");
  return r;
}

KeplerInvariants celestial_kepler_invariants(const CelestialConfig &cfg, double orbits) {
  cfg.validate();
  if (!(orbits > 0.0))
    throw ArgumentError("need a positive number of orbits");
  CelestialConfig bare = cfg;
  bare.M_j = 0.0;
  const Field field{cfg.M_sun, 0.0, cfg.R_j, 0.0, 0.0};
  const State s0 = perihelion_start(cfg);
  auto energy = [&](const State &s) {
    return 0.5 * (s[2] * s[2] + s[3] * s[3]) - cfg.M_sun / std::hypot(s[0], s[1]);
  };
  auto angmom = [](const State &s) { return s[0] * s[3] - s[1] * s[2]; };
  Marcher m(field, bare, 1.0);
  m.advance_to(orbits * cfg.kepler_period());
  KeplerInvariants k;
  k.energy_drift = std::abs(energy(m.state()) - energy(s0)) / std::abs(energy(s0));
  k.angular_momentum_drift = std::abs(angmom(m.state()) - angmom(s0)) / std::abs(angmom(s0));
  return k;
}

} // namespace adiabat::analogs
