#pragma once

// Classical and two-level analogs of adiabatic transport: coupled pendulums
// swept through resonance, the Landau-Zener sweep, the rectangular (Delta,
// epsilon) loop around a real crossing, and the period of a planet perturbed
// by a slowly moving outer body.

#include <complex>
#include <functional>
#include <string>
#include <vector>

namespace adiabat::analogs {

// ---------------------------------------------------------------------------
// Coupled pendulums

struct PendulumSystem {
  double g = 1.0;
  double l_mu = 1.0;
  double kappa = 0.02; // spring coupling, 1/time^2
  std::function<double(double)> l_e;     // length schedule on [0, duration]
  std::function<double(double)> l_e_dot; // its time derivative
  bool parametric_term = true;           // include the -2 (dl/dt / l) theta' drag
};

/// Schedule whose frequency omega_e = sqrt(g / l_e) runs linearly from
/// omega_mu - span to omega_mu + span over `duration`.
PendulumSystem linear_frequency_sweep(double g, double l_mu, double kappa, double span,
                                      double duration);

struct PendulumSample {
  double t = 0.0;
  double energy_e = 0.0;
  double energy_mu = 0.0;
};

struct PendulumResult {
  double transfer_fraction = 0.0; // energy share of the final mu-like normal mode
  double epsilon = 0.0;           // kappa / (2 omega_mu)
  double max_rate = 0.0;          // |d Delta / dt| at the crossing, Delta = omega_mu - omega_e
  double frozen_energy_drift = 0.0;
  std::vector<PendulumSample> series;
};

/// Integrates the linearised pendulums from theta_e = 1 (all energy in "e")
/// over [0, duration], then for `tail_periods` more periods with the lengths
/// frozen. Throws DynamicsError if energy drifts by more than 1e-6 (relative)
/// during the frozen tail.
PendulumResult pendulum_sweep(const PendulumSystem &sys, double duration,
                              std::size_t samples = 200, double tail_periods = 20.0);

/// Relative energy drift of the frozen (constant-length) system over
/// `periods` natural periods.
double pendulum_energy_drift(double g, double l_e, double l_mu, double kappa, double periods);

struct RateLadder {
  std::vector<double> rates;     // |d Delta/dt| / epsilon^2
  std::vector<double> fractions; // transfer fractions
  bool monotone = false;         // fractions increase as the rate falls
};

/// Transfer fraction for each sweep rate c (in units of epsilon^2), sweeping
/// omega_e through +-25 epsilon around omega_mu. Rates run in parallel.
RateLadder pendulum_rate_ladder(const std::vector<double> &rates, double kappa = 0.02,
                                unsigned jobs = 1);

// ---------------------------------------------------------------------------
// Two-level sweep

struct TwoLevelSweep {
  double epsilon = 0.5;   // coupling
  double alpha = 1.0;     // dDelta/dt
  double delta_max = 0.0; // sweep Delta over [-delta_max, delta_max]; 0: 40 max(eps, sqrt(alpha))
  double step = 0.0;      // 0: 0.09 / max||H||
};

struct TwoLevelResult {
  double conversion = 0.0;        // weight in the final instantaneous ground state
  double survival = 0.0;          // 1 - conversion
  double flavor_conversion = 0.0; // |<(0,1)|psi(T)>|^2
  double landau_zener = 0.0;      // 1 - exp(-pi eps^2 / alpha)
  double duration = 0.0;
};

/// Evolves H = eps sigma1 + alpha t sigma3 over Delta in [-delta_max,
/// delta_max], starting in the instantaneous ground state (the "e" flavor
/// for delta_max >> eps). Conversion is measured in the adiabatic basis,
/// which removes the O(eps / delta_max) flavor-basis interference of a finite
/// window; `flavor_conversion` is the raw flavor projection.
TwoLevelResult two_level_sweep(const TwoLevelSweep &s);

// ---------------------------------------------------------------------------
// Rectangular loop in the (Delta, epsilon) plane

struct RectangleLoopResult {
  double wilson_phase = 0.0;         // Berry phase of the ground band, (-pi, pi]
  std::complex<double> t_squared{};  // <u_S| T^2 |u_S>, dynamical phase removed
  double half_loop_error = 0.0;      // |t_squared + 1|
  double dynamical_phase = 0.0;      // full-loop dynamical phase
  bool regime_warning = false;       // delta0 < 10 epsilon0
  std::string warning;
};

/// Rectangle with corners (+-delta0 + offset, +-epsilon0) for
/// H = eps sigma1 + Delta sigma3. Computes the discrete Wilson loop with
/// `samples` points and, when `transport` is set and the rectangle is centred
/// (offset 0), builds the half-loop transport T = sigma2 U_half and checks
/// T^2 = -1 on the ground state. The transport moves along each edge at
/// parameter speed `adiabaticity` * |h|^2, |h|^2 = Delta^2 + eps^2.
RectangleLoopResult rectangular_loop_phase(double epsilon0, double delta0, std::size_t samples,
                                           double offset = 0.0, bool transport = true,
                                           double adiabaticity = 0.001);

// ---------------------------------------------------------------------------
// Planet perturbed by an outer body (G = M_sun = R_e = 1, Sun fixed)

struct CelestialConfig {
  double M_sun = 1.0;
  double M_j = 1e-3;
  double R_j = 5.2;
  double T_j = 0.0; // 0: Kepler period 2 pi sqrt(R_j^3 / M_sun)
  double R_e = 1.0; // semi-major axis of the unperturbed planet
  double eccentricity = 0.0167;
  double phi0 = 0.0; // outer body angle at t = 0
  double tolerance = 1e-12;

  double jupiter_period() const;
  double kepler_period() const;
  /// Throws ArgumentError on non-positive masses/radii, R_j <= R_e or e outside [0, 1).
  void validate() const;
};

/// (M_j / M_sun) R_e^2 / (R_j - R_e)^2.
double force_ratio(const CelestialConfig &cfg);

/// Period 2 pi / <d lambda/dt> of the planet with the outer body frozen at
/// angle `phi`, where lambda is the osculating mean longitude about the Sun.
/// Rates are smooth-window weighted averages over `orbits` Kepler periods
/// either side of the start at perihelion, and are referred to the start
/// orbit's adiabatic invariant <sqrt(mu a)> (measured in the field frozen at
/// phi0) to first order. Throws DynamicsError on escape or collision.
double celestial_frozen_period(const CelestialConfig &cfg, double phi, int orbits = 8);

struct CelestialResidual {
  double elapsed = 0.0;              // n T_j
  double full_phase = 0.0;           // change of the mean longitude over `elapsed`
  double adiabatic_phase = 0.0;      // integral of 2 pi / T'(phi(t)) dt
  double kepler_phase = 0.0;         // 2 pi elapsed / T_kepler
  double residual = 0.0;             // full - adiabatic
  double residual_per_cycle = 0.0;
  double dynamical_per_cycle = 0.0;  // (adiabatic - kepler) per outer period
  double refinement_change = 0.0;    // |residual(tol) - residual(tol / 100)|
};

/// Full integration with the outer body on its circular orbit over `periods`
/// outer periods, compared with the frozen-period prediction averaged over
/// `phi_nodes` equally spaced angles (exact for whole periods). Throws
/// AccuracyError when the residual moves by more than 5% (plus 1e-7 rad)
/// under a 100x tighter tolerance.
CelestialResidual celestial_adiabatic_residual(const CelestialConfig &cfg, int periods,
                                               int phi_nodes = 32, unsigned jobs = 1);

struct KeplerInvariants {
  double energy_drift = 0.0;           // relative
  double angular_momentum_drift = 0.0; // relative
};

/// Energy and angular momentum drift of the unperturbed orbit over `orbits`.
KeplerInvariants celestial_kepler_invariants(const CelestialConfig &cfg, double orbits);

} // namespace adiabat::analogs
