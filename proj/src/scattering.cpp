#include "adiabat/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <thread>

#include "adiabat/errors.hpp"
#include "adiabat/qcore.hpp"

namespace adiabat::scattering {

namespace {

constexpr double kPi = 3.14159265358979323846;
const Complex I(0.0, 1.0);

// Maps plane-wave coefficients (a, b) to (psi, psi') at x.
Matrix2c wave_to_values(double p, double x) {
  const Complex e = std::exp(I * p * x);
  Matrix2c w;
  w << e, 1.0 / e, I * p * e, -I * p / e;
  return w;
}

} // namespace

void ScatteringConfig::validate() const {
  if (!(p > 0.0) || !(m > 0.0) || !(X > 0.0))
    throw ArgumentError("scattering config needs p, m, X > 0");
  if (const auto *d = std::get_if<DeltaBarrier>(&barrier)) {
    if (!(d->strength >= 0.0) || !std::isfinite(d->strength))
      throw ArgumentError("delta strength must be finite and non-negative");
  } else {
    const auto &sq = std::get<SquareBarrier>(barrier);
    if (!(sq.height >= 0.0) || !(sq.width >= 0.0))
      throw ArgumentError("square barrier height and width must be non-negative");
    if (!(sq.width < X))
      throw ArgumentError("square barrier width must be smaller than X");
  }
}

Matrix2c barrier_matrix(const ScatteringConfig &config) {
  config.validate();
  const double p = config.p;
  const double X = config.X;
  if (const auto *d = std::get_if<DeltaBarrier>(&config.barrier)) {
    const double beta = config.m * d->strength / p;
    const Complex ph = std::exp(2.0 * I * p * X);
    Matrix2c M;
    M << 1.0 - I * beta, -I * beta / ph, I * beta * ph, 1.0 + I * beta;
    return M;
  }
  const auto &sq = std::get<SquareBarrier>(config.barrier);
  const double x1 = X - 0.5 * sq.width, x2 = X + 0.5 * sq.width;
  const double E = p * p / (2.0 * config.m);
  const Complex k = std::sqrt(Complex(2.0 * config.m * (E - sq.height), 0.0));
  const Complex ka = k * sq.width;
  const Complex sinc_a = std::abs(ka) < 1e-8 ? Complex(sq.width) : std::sin(ka) / k;
  Matrix2c prop;
  prop << std::cos(ka), sinc_a, -k * k * sinc_a, std::cos(ka);
  return wave_to_values(p, x2).inverse() * prop * wave_to_values(p, x1);
}

Transmission barrier_amplitudes(const Matrix2c &M) {
  // Right side has no incoming wave: (t, 0) = M (1, r).
  Transmission tr;
  tr.r = -M(1, 0) / M(1, 1);
  tr.t = M(0, 0) + M(0, 1) * tr.r;
  return tr;
}

double delta_transmission(double p, double m, double gamma) {
  const double beta = m * gamma / p;
  return 1.0 / (1.0 + beta * beta);
}

double delta_strength_for_transmission(double p, double m, double epsilon) {
  if (!(epsilon > 0.0 && epsilon <= 1.0))
    throw ArgumentError("transmission must lie in (0, 1]");
  return p / m * std::sqrt(1.0 / epsilon - 1.0);
}

double reflection_phase(const ScatteringConfig &config) {
  const Matrix2c M = barrier_matrix(config);
  // Hard wall at the origin: psi = sin(px) on the left, i.e. (a, b) ~ (1, -1).
  const Eigen::Vector2cd right = M * Eigen::Vector2cd(1.0, -1.0);
  const Complex r = right[0] / right[1];
  if (std::abs(std::abs(r) - 1.0) > 1e-10)
    throw ConsistencyError("closed channel reflection has |r| = " + std::to_string(std::abs(r)));
  return qcore::wrap_phase(std::arg(r));
}

double delta_reflection_phase_closed_form(double p, double m, double X, double gamma) {
  const double beta = m * gamma / p;
  const Complex c = 1.0 + 2.0 * beta * std::sin(p * X) * std::exp(-I * p * X);
  return qcore::wrap_phase(kPi + 2.0 * std::arg(c));
}

double naive_force_estimate(double p, double X, double m, double Y0) {
  if (!(p > 0.0) || !(m > 0.0) || !(Y0 > 0.0) || !(X >= 0.0))
    throw ArgumentError("naive force estimate needs p, m, Y0 > 0 and X >= 0");
  return 2.0 * p * p * X / (m * Y0 * Y0);
}

// ---------------------------------------------------------------------------
// Bounce chain

BounceExpectation bounce_chain_expectation(const BounceChain &chain) {
  const double eps = chain.epsilon;
  if (!(eps > 0.0 && eps < 1.0))
    throw ArgumentError("tunnelling probability must lie in (0, 1)");
  BounceExpectation ex;
  ex.trap_probability = eps;
  ex.first_kick = 2.0 * chain.p * (1.0 - eps);
  // sum_{n>=1} eps (1-eps)^n (-2p) = -2p (1 - eps), summed in closed form.
  ex.trapped_kicks = -ex.first_kick;
  ex.net_momentum = ex.first_kick + ex.trapped_kicks;
  ex.trapped_dwell = (1.0 - eps) / eps;
  return ex;
}

double bounce_chain_partial_kicks(const BounceChain &chain, int terms) {
  const double eps = chain.epsilon;
  if (!(eps > 0.0 && eps < 1.0))
    throw ArgumentError("tunnelling probability must lie in (0, 1)");
  double sum = 0.0;
  double weight = eps; // probability of being trapped with n inner reflections still to come
  for (int n = 1; n <= terms; ++n) {
    weight *= (1.0 - eps);
    sum += weight * (-2.0 * chain.p);
  }
  return sum;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

struct BatchStats {
  double net_sum = 0.0, net_sq = 0.0;
  double dwell_sum = 0.0, dwell_sq = 0.0;
  std::uint64_t trapped = 0;
  std::vector<double> nets_head;
};

constexpr std::uint64_t kBatch = 1u << 16;
constexpr std::size_t kRecordedTrials = 16;

BatchStats run_batch(const BounceChain &chain, std::uint64_t seed, std::uint64_t batch,
                     std::uint64_t count) {
  std::mt19937_64 rng(splitmix64(seed ^ splitmix64(batch)));
  auto uniform = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  BatchStats s;
  const double kick = 2.0 * chain.p;
  for (std::uint64_t i = 0; i < count; ++i) {
    double net;
    if (uniform() >= chain.epsilon) {
      net = kick;
    } else {
      std::uint64_t inner = 0;
      while (uniform() >= chain.epsilon)
        ++inner;
      net = -kick * static_cast<double>(inner);
      const double d = static_cast<double>(inner);
      s.dwell_sum += d;
      s.dwell_sq += d * d;
      ++s.trapped;
    }
    s.net_sum += net;
    s.net_sq += net * net;
    if (batch == 0 && i < kRecordedTrials)
      s.nets_head.push_back(net);
  }
  return s;
}

} // namespace

BounceSample bounce_chain_sample(const BounceChain &chain, std::uint64_t trials,
                                 std::uint64_t seed, unsigned jobs) {
  if (!(chain.epsilon > 0.0 && chain.epsilon < 1.0))
    throw ArgumentError("tunnelling probability must lie in (0, 1)");
  if (trials < 1)
    throw ArgumentError("need at least one trial");

  const std::uint64_t nbatches = (trials + kBatch - 1) / kBatch;
  std::vector<BatchStats> stats(nbatches);
  auto work = [&](std::uint64_t first, std::uint64_t stride) {
    for (std::uint64_t b = first; b < nbatches; b += stride) {
      const std::uint64_t count = std::min(kBatch, trials - b * kBatch);
      stats[b] = run_batch(chain, seed, b, count);
    }
  };
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(nbatches)));
  if (jobs == 1) {
    work(0, 1);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned j = 0; j < jobs; ++j)
      pool.emplace_back(work, j, jobs);
  }

  BatchStats total;
  for (const auto &s : stats) {
    total.net_sum += s.net_sum;
    total.net_sq += s.net_sq;
    total.dwell_sum += s.dwell_sum;
    total.dwell_sq += s.dwell_sq;
    total.trapped += s.trapped;
  }
  BounceSample out;
  out.trials = trials;
  out.trapped_trials = total.trapped;
  out.first_nets = stats.front().nets_head;
  const double n = static_cast<double>(trials);
  out.mean_net_momentum = total.net_sum / n;
  const double var = n > 1 ? std::max(0.0, (total.net_sq - n * out.mean_net_momentum *
                                                                 out.mean_net_momentum) /
                                               (n - 1.0))
                           : 0.0;
  out.net_standard_error = std::sqrt(var / n);
  if (total.trapped > 0) {
    const double nt = static_cast<double>(total.trapped);
    out.mean_dwell = total.dwell_sum / nt;
    const double dvar =
        nt > 1 ? std::max(0.0, (total.dwell_sq - nt * out.mean_dwell * out.mean_dwell) / (nt - 1.0))
               : 0.0;
    out.dwell_standard_error = std::sqrt(dvar / nt);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Phase versus probe distance

ProbeProfile ProbeProfile::exponential(double gamma_w, double w, double Y0) {
  if (!(gamma_w > 0.0) || !(w > 0.0) || !(Y0 > w))
    throw ArgumentError("probe profile needs gamma_w > 0 and Y0 > w > 0");
  const double k = std::log(1e12) / (Y0 - w);
  ProbeProfile prof;
  prof.strength_of_Y = [=](double Y) { return gamma_w * std::exp(-k * (Y - w)); };
  prof.Y0 = Y0;
  prof.w = w;
  return prof;
}

PhaseTable phase_vs_Y(const ProbeProfile &profile, const ScatteringConfig &config,
                      const std::vector<double> &Y_samples) {
  if (!profile.strength_of_Y)
    throw ArgumentError("probe profile has no strength function");
  if (Y_samples.size() < 2)
    throw ArgumentError("need at least two Y samples");
  for (double Y : Y_samples)
    if (!(Y > profile.w && Y <= 2.0 * profile.Y0))
      throw ArgumentError("Y samples must lie in (w, 2 Y0]");

  auto phase_at = [&](double Y) {
    ScatteringConfig c = config;
    c.barrier = DeltaBarrier{profile.strength_of_Y(Y)};
    return reflection_phase(c);
  };

  // Wrapped increment from (Ya, pa) to Yb, bisecting until every jump < pi/2.
  auto increment = [&](auto &&self, double Ya, double pa, double Yb, double pb, int depth) -> double {
    const double jump = qcore::wrap_phase(pb - pa);
    if (std::abs(jump) < 0.5 * kPi)
      return jump;
    if (depth > 40)
      throw ResolutionError("phase unwrapping did not resolve a jump");
    const double Ym = 0.5 * (Ya + Yb);
    const double pm = phase_at(Ym);
    return self(self, Ya, pa, Ym, pm, depth + 1) + self(self, Ym, pm, Yb, pb, depth + 1);
  };

  PhaseTable table;
  double unwrapped = 0.0;
  for (std::size_t i = 0; i < Y_samples.size(); ++i) {
    PhaseSample row;
    row.Y = Y_samples[i];
    row.gamma = profile.strength_of_Y(row.Y);
    row.phase = phase_at(row.Y);
    if (i == 0) {
      unwrapped = row.phase;
    } else {
      const auto &prev = table.rows.back();
      unwrapped += increment(increment, prev.Y, prev.phase, row.Y, row.phase, 0);
    }
    row.unwrapped = unwrapped;
    table.rows.push_back(row);
  }
  table.total_variation = table.rows.back().unwrapped - table.rows.front().unwrapped;
  // Orient along increasing barrier strength before comparing with -2pX.
  const double up = table.rows.front().gamma > table.rows.back().gamma ? -table.total_variation
                                                                       : table.total_variation;
  table.winding_count =
      static_cast<int>(std::lround((up + 2.0 * config.p * config.X) / (2.0 * kPi)));
  return table;
}

} // namespace adiabat::scattering
