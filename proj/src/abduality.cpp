#include "adiabat/abduality.hpp"

#include <cmath>
#include <limits>

#include "adiabat/errors.hpp"
#include "adiabat/qcore.hpp"

namespace adiabat::abduality {

void CapacitorScenario::validate() const {
  const bool finite = std::isfinite(e) && std::isfinite(E) && std::isfinite(x) && std::isfinite(t);
  if (!finite || !(e > 0.0) || !(E > 0.0) || !(x > 0.0) || !(t >= 0.0))
    throw ArgumentError("capacitor scenario needs e, E, x > 0 and t >= 0");
}

DualityReport duality_report(const CapacitorScenario &s) {
  s.validate();
  const double V_L = s.E * s.x;
  const double V_R = -s.E * s.x;
  DualityReport r;
  r.probe_phase = s.e * V_L * s.t - s.e * V_R * s.t;
  r.plate_momentum = s.e * s.E * s.t;
  r.system_phase = (2.0 * r.plate_momentum) * s.x;
  const double scale = std::max(std::abs(r.probe_phase), std::abs(r.system_phase));
  r.match = std::abs(r.probe_phase - r.system_phase) <=
            4.0 * std::numeric_limits<double>::epsilon() * scale;
  return r;
}

WhichPathReport which_path_ratio(const CapacitorScenario &s, double localization) {
  s.validate();
  if (!(localization > 0.0))
    throw ArgumentError("localization must be positive");
  WhichPathReport w;
  const double kick = s.e * s.E * s.t;
  w.ratio = (1.0 / localization) / kick;
  w.relative_phase = 2.0 * kick * s.x;
  w.phase_within_pi = w.relative_phase <= qcore::kPi * (1.0 + 1e-15);
  w.fringes_destroyed = w.phase_within_pi && w.ratio > 1.0;
  return w;
}

double gaussian_fringe_visibility(double relative_momentum, double width) {
  if (!(width > 0.0))
    throw ArgumentError("plate wave function width must be positive");
  const double a = relative_momentum * width;
  return std::exp(-0.5 * a * a);
}

} // namespace adiabat::abduality
