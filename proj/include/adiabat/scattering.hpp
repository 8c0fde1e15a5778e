#pragma once

// One-dimensional channel closed by a hard mirror at x = 0 with a static probe
// barrier at x = X. Covers the stationary reflection phase, the naive force
// estimate, the reflect/tunnel bounce chain and a time-dependent wavepacket
// with momentum bookkeeping on the barrier (hbar = 1).
//
// Momentum "kicks" on the probe are reported positive when directed towards
// the mirror (-x): a particle arriving from +inf and reflecting off the probe
// delivers +2p, a trapped particle reflecting off the probe's inner face -2p.

#include <complex>
#include <cstdint>
#include <functional>
#include <variant>
#include <vector>

#include <Eigen/Dense>

namespace adiabat::scattering {

using Complex = std::complex<double>;
using Matrix2c = Eigen::Matrix2cd;

struct DeltaBarrier {
  double strength = 0.0; // gamma: V(x) = gamma delta(x - X)
};

struct SquareBarrier {
  double height = 0.0; // V0
  double width = 0.0;  // a; occupies [X - a/2, X + a/2]
};

using BarrierProfile = std::variant<DeltaBarrier, SquareBarrier>;

struct ScatteringConfig {
  double p = 1.0; // incident momentum
  double m = 1.0; // mass
  double X = 1.0; // probe position
  BarrierProfile barrier = DeltaBarrier{};

  /// Throws ArgumentError on p, m, X <= 0, negative strengths or a >= X.
  void validate() const;
};

/// Transfer matrix M taking plane-wave coefficients (a, b) of
/// a e^{ipx} + b e^{-ipx} on the left of the barrier to those on the right.
Matrix2c barrier_matrix(const ScatteringConfig &config);

struct Transmission {
  Complex r; // reflection amplitude, incidence from the left
  Complex t; // transmission amplitude
  double probability() const { return std::norm(t); }
};

/// Open-channel amplitudes for a wave incident from the left.
Transmission barrier_amplitudes(const Matrix2c &m);

/// Closed-form delta-barrier transmission 1 / (1 + (m gamma / p)^2).
double delta_transmission(double p, double m, double gamma);

/// Delta strength giving tunnelling probability `epsilon` at momentum p.
double delta_strength_for_transmission(double p, double m, double epsilon);

/// arg r in (-pi, pi] for the wall + barrier system, where r multiplies the
/// outgoing e^{ipx}. Throws ConsistencyError unless |r| = 1 within 1e-10.
double reflection_phase(const ScatteringConfig &config);

/// Closed form of the delta case: arg r = pi + 2 arg(1 + 2 beta sin(pX) e^{-ipX}).
double delta_reflection_phase_closed_form(double p, double m, double X, double gamma);

/// The paradoxical force estimate 2 p^2 X / (m Y0^2). Not a physical force:
/// it grows without bound in X.
double naive_force_estimate(double p, double X, double m, double Y0);

struct BounceChain {
  double epsilon = 0.1; // tunnelling probability per barrier encounter
  double p = 1.0;
};

struct BounceExpectation {
  double first_kick = 0.0;      // +2p(1 - eps)
  double trapped_kicks = 0.0;   // -2p(1 - eps), the summed geometric series
  double net_momentum = 0.0;    // exactly 0
  double trapped_dwell = 0.0;   // expected inner reflections given trapping: (1-eps)/eps
  double trap_probability = 0.0;
};

/// Closed-form expectations of the reflect/tunnel Markov chain: on the first
/// encounter reflect (1-eps, kick +2p) or tunnel (eps); once trapped, every
/// round trip either escapes (eps) or reflects off the inner face (1-eps,
/// kick -2p).
BounceExpectation bounce_chain_expectation(const BounceChain &chain);

/// Trapped-branch kicks summed term by term over the first `terms` inner
/// reflections: sum_n P(trapped, n-th reflection happens) * (-2p).
double bounce_chain_partial_kicks(const BounceChain &chain, int terms);

struct BounceSample {
  double mean_net_momentum = 0.0;
  double net_standard_error = 0.0;
  double mean_dwell = 0.0;          // mean inner reflections over trapped trials
  double dwell_standard_error = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t trapped_trials = 0;
  std::vector<double> first_nets;   // per-trial net momentum of the first few trials
};

/// Monte Carlo of the same chain. Trials are split into fixed batches whose
/// generators are seeded from `seed` by batch counter, so results do not
/// depend on `jobs`.
BounceSample bounce_chain_sample(const BounceChain &chain, std::uint64_t trials,
                                 std::uint64_t seed, unsigned jobs = 1);

struct ProbeProfile {
  std::function<double(double)> strength_of_Y; // gamma(Y), decreasing
  double Y0 = 1.0;                             // range
  double w = 0.1;                              // channel width

  /// gamma(Y) = gamma_w exp(-k (Y - w)) with gamma(Y0) = gamma_w * 1e-12.
  static ProbeProfile exponential(double gamma_w, double w, double Y0);
};

struct PhaseSample {
  double Y = 0.0;
  double gamma = 0.0;
  double phase = 0.0;           // arg r in (-pi, pi]
  double unwrapped = 0.0;       // continuous branch starting at the first sample
};

struct PhaseTable {
  std::vector<PhaseSample> rows;
  double total_variation = 0.0; // unwrapped(last) - unwrapped(first)
  /// Whole windings by which the naive extra phase -2pX exceeds the tracked
  /// variation: round((total_variation + 2pX) / 2pi) when the table spans
  /// gamma from ~0 to ~inf.
  int winding_count = 0;
};

/// Reflection phase versus transverse probe distance. Consecutive samples are
/// bisected until wrapped jumps are below pi/2 so the unwrapping follows the
/// nearest branch. Requires all Y in (w, 2 Y0].
PhaseTable phase_vs_Y(const ProbeProfile &profile, const ScatteringConfig &config,
                      const std::vector<double> &Y_samples);

// ---------------------------------------------------------------------------
// Wavepacket

struct WavepacketRun {
  double L = 2400.0;       // domain [0, L], hard walls at both ends
  std::size_t points = 8192; // grid points including both walls
  double dt = 0.05;
  double x0 = 110.0;       // packet centre
  double sigma = 10.0;     // standard deviation of |psi|^2 at t = 0
  double duration = 0.0;   // 0: choose from the geometry
  double short_window = 0.0; // 0: first encounter + X/v
  std::size_t record_every = 20;

  double dx() const { return L / static_cast<double>(points - 1); }
};

struct WavepacketRecord {
  double t = 0.0;
  double kick = 0.0;        // integrated momentum delivered to the probe, +towards mirror
  double wall_impulse = 0.0; // integrated x-momentum delivered to the walls
  double particle_momentum = 0.0;
  double survival = 0.0;    // probability in [0, X]
  double norm = 0.0;
};

struct WavepacketSummary {
  double short_kick = 0.0;
  double long_kick = 0.0;
  double epsilon_plane_wave = 0.0;
  double epsilon_first_encounter = 0.0; // probability found in [0, X] after the first hit
  double decay_rate = 0.0;              // fitted survival decay per unit time
  double round_trip_time = 0.0;         // 2 X m / p
  double efold_round_trips = 0.0;       // 1 / (decay_rate * round_trip_time)
  double max_norm_drift = 0.0;
  double bookkeeping_residual = 0.0;    // |dP - kick_x - wall| at the end
  double short_window_end = 0.0;
  double duration = 0.0;
  double grid_strength = 0.0;           // lattice delta strength after calibration
};

struct WavepacketResult {
  std::vector<WavepacketRecord> series;
  WavepacketSummary summary;
};

/// Crank-Nicolson evolution of a Gaussian packet incident with momentum -p on
/// the closed wall + barrier channel. A delta barrier occupies one grid cell
/// with its strength calibrated by `lattice_delta_strength`. Throws StabilityError on norm drift > 1e-6, GeometryError if
/// the packet reaches the far wall within the run.
WavepacketResult wavepacket_run(const WavepacketRun &run, const ScatteringConfig &config);

/// Grid strength reproducing the continuum delta transmission at momentum p on
/// the lattice: gamma * sin(p dx) / (p dx).
double lattice_delta_strength(double gamma, double p, double dx);

} // namespace adiabat::scattering
