#pragma once

// Electric Aharonov-Bohm duality for an electron passing between two charged
// capacitor plates: the probe-side phase e(V_L - V_R)t against the phase the
// plates' relative wave function picks up from their momentum kicks.

namespace adiabat::abduality {

struct CapacitorScenario {
  double e = 1.0; // electron charge
  double E = 1.0; // field between the plates
  double x = 1.0; // plate separation
  double t = 1.0; // dwell time in the force-free region

  /// Throws ArgumentError unless e, E, x > 0 and t >= 0 (all finite).
  void validate() const;
};

struct DualityReport {
  double probe_phase = 0.0;    // relative L - R phase e V_L t - e V_R t
  double plate_momentum = 0.0; // +-eEt delivered to each plate
  double system_phase = 0.0;   // relative momentum 2eEt times separation x
  bool match = false;          // equal within a few ulps
};

DualityReport duality_report(const CapacitorScenario &s);

struct WhichPathReport {
  double ratio = 0.0;          // (1 / dX) / (eEt)
  double relative_phase = 0.0; // 2eExt
  bool phase_within_pi = false;
  bool fringes_destroyed = false; // ratio > 1 with the phase bound satisfied
};

/// Minimum momentum uncertainty 1/dX forced by localising the electron within
/// dX, relative to the per-plate kick eEt. Throws ArgumentError for dX <= 0.
WhichPathReport which_path_ratio(const CapacitorScenario &s, double localization);

/// |<psi|exp(i q X)|psi>| for a Gaussian plate wave function whose position
/// density has standard deviation `width`: exp(-q^2 width^2 / 2).
double gaussian_fringe_visibility(double relative_momentum, double width);

} // namespace adiabat::abduality
