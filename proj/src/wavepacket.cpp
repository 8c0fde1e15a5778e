// Crank-Nicolson wavepacket in the closed wall + barrier channel.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "adiabat/errors.hpp"
#include "adiabat/scattering.hpp"

namespace adiabat::scattering {

namespace {

const Complex I(0.0, 1.0);

// Tridiagonal solve with constant off-diagonal, factorised once.
class Thomas {
public:
  Thomas(const std::vector<Complex> &diag, Complex off) : off_(off), cp_(diag.size()), den_(diag.size()) {
    den_[0] = diag[0];
    cp_[0] = off / den_[0];
    for (std::size_t j = 1; j < diag.size(); ++j) {
      den_[j] = diag[j] - off * cp_[j - 1];
      cp_[j] = off / den_[j];
    }
  }

  // Solves in place.
  void solve(std::vector<Complex> &d) const {
    const std::size_t n = d.size();
    d[0] /= den_[0];
    for (std::size_t j = 1; j < n; ++j)
      d[j] = (d[j] - off_ * d[j - 1]) / den_[j];
    for (std::size_t j = n - 1; j-- > 0;)
      d[j] -= cp_[j] * d[j + 1];
  }

private:
  Complex off_;
  std::vector<Complex> cp_, den_;
};

double norm_of(const std::vector<Complex> &psi, double dx) {
  double s = 0.0;
  for (const auto &z : psi)
    s += std::norm(z);
  return s * dx;
}

// <psi| -i D1 |psi> with central differences and Dirichlet walls.
double lattice_momentum(const std::vector<Complex> &psi) {
  const std::size_t n = psi.size();
  Complex s = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const Complex up = j + 1 < n ? psi[j + 1] : Complex(0.0);
    const Complex dn = j > 0 ? psi[j - 1] : Complex(0.0);
    s += std::conj(psi[j]) * (up - dn);
  }
  // dx from the inner product cancels the 1/dx of the difference.
  return (-I * s).real() * 0.5;
}

} // namespace

double lattice_delta_strength(double gamma, double p, double dx) {
  if (!(dx > 0.0) || !(p > 0.0))
    throw ArgumentError("lattice delta strength needs p, dx > 0");
  const double q = p * dx;
  return gamma * std::sin(q) / q;
}

WavepacketResult wavepacket_run(const WavepacketRun &run, const ScatteringConfig &config) {
  config.validate();
  if (run.points < 16 || !(run.L > 0.0) || !(run.dt > 0.0) || run.record_every < 1)
    throw ArgumentError("wavepacket run needs points >= 16, L > 0, dt > 0, record_every >= 1");
  const double dx = run.dx();
  const double p = config.p, m = config.m, X = config.X;
  if (!(run.sigma >= 10.0 * dx))
    throw ArgumentError("packet width must cover at least 10 grid cells");
  if (!(p * dx < 0.5))
    throw ArgumentError("p dx must be below 0.5");
  if (!(run.x0 > X + 5.0 * run.sigma))
    throw ArgumentError("packet must start clear of the barrier (x0 > X + 5 sigma)");
  if (!(run.L > run.x0 + 5.0 * run.sigma))
    throw ArgumentError("packet must start clear of the far wall (L > x0 + 5 sigma)");

  const std::size_t n = run.points - 2; // interior unknowns, x_j = (j + 1) dx
  auto xpos = [dx](std::size_t j) { return static_cast<double>(j + 1) * dx; };

  // Potential on the interior cells.
  std::vector<double> V(n, 0.0);
  double grid_strength = 0.0;
  if (const auto *d = std::get_if<DeltaBarrier>(&config.barrier)) {
    grid_strength = lattice_delta_strength(d->strength, p, dx);
    const auto cell = static_cast<std::size_t>(std::lround(X / dx));
    if (cell < 1 || cell > n)
      throw GeometryError("barrier falls outside the grid");
    V[cell - 1] = grid_strength / dx;
  } else {
    const auto &sq = std::get<SquareBarrier>(config.barrier);
    for (std::size_t j = 0; j < n; ++j)
      if (std::abs(xpos(j) - X) <= 0.5 * sq.width + 1e-12 * dx)
        V[j] = sq.height;
    grid_strength = sq.height * sq.width;
  }
  std::size_t vlo = n, vhi = 0;
  for (std::size_t j = 0; j < n; ++j)
    if (V[j] != 0.0) {
      vlo = std::min(vlo, j);
      vhi = std::max(vhi, j);
    }

  // CN operators: (1 + i dt/2 H) psi' = (1 - i dt/2 H) psi.
  const double kin = 1.0 / (2.0 * m * dx * dx);
  const Complex h = 0.5 * I * run.dt;
  std::vector<Complex> lhs_diag(n), rhs_diag(n);
  for (std::size_t j = 0; j < n; ++j) {
    lhs_diag[j] = 1.0 + h * (2.0 * kin + V[j]);
    rhs_diag[j] = 1.0 - h * (2.0 * kin + V[j]);
  }
  const Complex lhs_off = -h * kin;
  const Complex rhs_off = h * kin;
  const Thomas solver(lhs_diag, lhs_off);

  std::vector<Complex> psi(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double u = xpos(j) - run.x0;
    psi[j] = std::exp(Complex(-u * u / (4.0 * run.sigma * run.sigma), -p * xpos(j)));
  }
  {
    const double s = 1.0 / std::sqrt(norm_of(psi, dx));
    for (auto &z : psi)
      z *= s;
  }

  const double v = p / m;
  const double t1 = (run.x0 - X) / v;
  const double round_trip = 2.0 * X / v;
  const double duration = run.duration > 0.0 ? run.duration : t1 + 16.0 * round_trip;
  const double short_end = run.short_window > 0.0 ? run.short_window : t1 + X / v;
  const auto steps = static_cast<std::size_t>(std::ceil(duration / run.dt - 1e-9));
  const auto short_step = static_cast<std::size_t>(std::lround(short_end / run.dt));
  const std::size_t far_start = static_cast<std::size_t>(std::floor(0.95 * run.L / dx));

  auto survival = [&](const std::vector<Complex> &s) {
    double acc = 0.0;
    for (std::size_t j = 0; j < n && xpos(j) <= X; ++j)
      acc += (xpos(j) < X ? 1.0 : 0.5) * std::norm(s[j]);
    return acc * dx;
  };
  auto far_probability = [&](const std::vector<Complex> &s) {
    double acc = 0.0;
    for (std::size_t j = far_start; j < n; ++j)
      acc += std::norm(s[j]);
    return acc * dx;
  };

  WavepacketResult result;
  const double P0 = lattice_momentum(psi);
  double kick = 0.0, wall_force_integral = 0.0, max_drift = 0.0;
  double short_kick = 0.0, short_survival = 0.0;

  auto record = [&](double t) {
    const double nrm = norm_of(psi, dx);
    max_drift = std::max(max_drift, std::abs(nrm - 1.0));
    if (max_drift > 1e-6)
      throw StabilityError("wavepacket norm drifted by " + std::to_string(max_drift));
    const double far = far_probability(psi);
    if (far > 1e-6)
      throw GeometryError("packet reached the far wall region (probability " +
                          std::to_string(far) + "); enlarge L or shorten the run");
    WavepacketRecord r;
    r.t = t;
    r.kick = kick;
    r.wall_impulse = -wall_force_integral;
    r.particle_momentum = lattice_momentum(psi);
    r.survival = survival(psi);
    r.norm = nrm;
    result.series.push_back(r);
  };
  record(0.0);

  std::vector<Complex> next(n), mid(n);
  for (std::size_t step = 1; step <= steps; ++step) {
    for (std::size_t j = 0; j < n; ++j) {
      Complex acc = rhs_diag[j] * psi[j];
      if (j > 0)
        acc += rhs_off * psi[j - 1];
      if (j + 1 < n)
        acc += rhs_off * psi[j + 1];
      next[j] = acc;
    }
    solver.solve(next);

    // Forces at the midpoint state make the discrete momentum balance exact.
    double fb = 0.0;
    if (vlo <= vhi) {
      const std::size_t a = vlo > 0 ? vlo - 1 : 0;
      const std::size_t b = std::min(vhi + 1, n - 1);
      for (std::size_t j = a; j <= b; ++j)
        mid[j] = 0.5 * (psi[j] + next[j]);
      for (std::size_t j = a; j < b; ++j)
        fb += (V[j] - V[j + 1]) * (std::conj(mid[j]) * mid[j + 1]).real();
    }
    const Complex m0 = 0.5 * (psi[0] + next[0]);
    const Complex m1 = 0.5 * (psi[n - 1] + next[n - 1]);
    const double fw = (std::norm(m0) - std::norm(m1)) / (2.0 * m * dx * dx);
    kick += fb * run.dt;
    wall_force_integral += fw * run.dt;

    psi.swap(next);
    const double t = static_cast<double>(step) * run.dt;
    if (step == short_step) {
      short_kick = kick;
      short_survival = survival(psi);
    }
    if (step % run.record_every == 0 || step == steps)
      record(t);
  }

  WavepacketSummary &s = result.summary;
  s.grid_strength = grid_strength;
  s.duration = static_cast<double>(steps) * run.dt;
  s.short_window_end = static_cast<double>(short_step) * run.dt;
  s.short_kick = short_step <= steps ? short_kick : kick;
  s.long_kick = kick;
  s.epsilon_plane_wave = barrier_amplitudes(barrier_matrix(config)).probability();
  s.epsilon_first_encounter = short_step <= steps ? short_survival : survival(psi);
  s.round_trip_time = round_trip;
  s.max_norm_drift = max_drift;
  s.bookkeeping_residual =
      std::abs(lattice_momentum(psi) - P0 - kick - wall_force_integral);

  // Exponential fit of survival after the second encounter.
  const double fit_start = t1 + 1.5 * round_trip;
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  std::size_t cnt = 0;
  for (const auto &r : result.series) {
    if (r.t < fit_start || r.survival <= 1e-300)
      continue;
    const double y = std::log(r.survival);
    sx += r.t;
    sy += y;
    sxx += r.t * r.t;
    sxy += r.t * y;
    ++cnt;
  }
  if (cnt >= 3) {
    const double c = static_cast<double>(cnt);
    const double slope = (c * sxy - sx * sy) / (c * sxx - sx * sx);
    s.decay_rate = -slope;
    if (s.decay_rate > 0.0)
      s.efold_round_trips = 1.0 / (s.decay_rate * round_trip);
  }
  return result;
}

} // namespace adiabat::scattering
