#include "adiabat/qcore.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "adiabat/errors.hpp"

namespace adiabat::qcore {

namespace {

constexpr double kDegenerateGap = 1e-12;

void fix_phase(CVector &v) {
  Eigen::Index best = 0;
  v.cwiseAbs().maxCoeff(&best);
  const Complex c = v[best];
  if (std::abs(c) > 0.0)
    v *= std::conj(c) / std::abs(c);
}

Eigensystem eigensystem_2x2(const CMatrix &h) {
  const double a = h(0, 0).real();
  const double d = h(1, 1).real();
  const Complex b = h(0, 1);
  const double mean = 0.5 * (a + d);
  const double half = 0.5 * (a - d);
  const double r = std::hypot(half, std::abs(b));

  Eigensystem es;
  es.values = {mean - r, mean + r};
  if (r < 0.5 * kDegenerateGap) {
    es.degenerate = true;
    es.vectors = {CVector::Unit(2, 0), CVector::Unit(2, 1)};
    return es;
  }

  // Pick whichever row of (H - lambda) gives the better-conditioned null vector.
  CVector lo(2), hi(2);
  if (half >= 0.0) {
    lo << -b, half + r;
    hi << half + r, std::conj(b);
  } else {
    lo << r - half, -std::conj(b);
    hi << -b, half - r;
  }
  lo.normalize();
  hi.normalize();
  fix_phase(lo);
  fix_phase(hi);
  es.vectors = {lo, hi};
  return es;
}

} // namespace

double wrap_phase(double angle) {
  double r = std::remainder(angle, 2.0 * kPi); // [-pi, pi]
  if (r <= -kPi)
    r += 2.0 * kPi;
  return r;
}

double phase_distance(double a, double b) { return std::abs(std::remainder(a - b, 2.0 * kPi)); }

StateVector::StateVector(CVector amplitudes) : amps_(std::move(amplitudes)) {
  if (amps_.size() == 0)
    throw ArgumentError("state vector must be non-empty");
  const double n = amps_.norm();
  if (!(std::abs(n - 1.0) <= 1e-12))
    throw ArgumentError("state vector not normalised: norm = " + std::to_string(n));
}

StateVector StateVector::normalized(CVector amplitudes) {
  const double n = amplitudes.norm();
  if (!(n > 0.0) || !std::isfinite(n))
    throw ArgumentError("cannot normalise a zero or non-finite vector");
  amplitudes /= n;
  return StateVector(std::move(amplitudes));
}

bool is_hermitian(const CMatrix &m, double tol) {
  if (m.rows() != m.cols() || m.rows() == 0)
    return false;
  if (!m.allFinite())
    return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

HermitianOperator::HermitianOperator(CMatrix entries) : m_(std::move(entries)) {
  if (!is_hermitian(m_))
    throw ArgumentError("operator is not Hermitian");
}

CMatrix identity2() { return CMatrix::Identity(2, 2); }

CMatrix sigma1() {
  CMatrix s(2, 2);
  s << 0, 1, 1, 0;
  return s;
}

CMatrix sigma2() {
  CMatrix s(2, 2);
  s << 0, Complex(0, -1), Complex(0, 1), 0;
  return s;
}

CMatrix sigma3() {
  CMatrix s(2, 2);
  s << 1, 0, 0, -1;
  return s;
}

CMatrix pauli_combination(double a0, const Vec3 &a) {
  CMatrix h(2, 2);
  h << a0 + a.z(), Complex(a.x(), -a.y()), Complex(a.x(), a.y()), a0 - a.z();
  return h;
}

HamiltonianSchedule::HamiltonianSchedule(Evaluator evaluator, double duration)
    : eval_(std::move(evaluator)), duration_(duration) {
  if (!eval_)
    throw ArgumentError("schedule needs an evaluator");
  if (!(duration >= 0.0) || !std::isfinite(duration))
    throw ArgumentError("schedule duration must be finite and non-negative");
}

HamiltonianSchedule HamiltonianSchedule::constant(const CMatrix &h, double duration) {
  return HamiltonianSchedule([h](double) { return h; }, duration);
}

CMatrix HamiltonianSchedule::at(double t) const {
  CMatrix h = eval_(t);
  if (!is_hermitian(h))
    throw ScheduleError("evaluator returned a non-Hermitian operator at t = " + std::to_string(t));
  return h;
}

Eigensystem instantaneous_eigensystem(const HermitianOperator &op) {
  return instantaneous_eigensystem(op.matrix());
}

Eigensystem instantaneous_eigensystem(const CMatrix &h) {
  if (h.rows() == 2)
    return eigensystem_2x2(h);

  Eigen::SelfAdjointEigenSolver<CMatrix> solver(h);
  Eigensystem es;
  const auto n = h.rows();
  es.values.resize(n);
  es.vectors.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    es.values[i] = solver.eigenvalues()[i];
    CVector v = solver.eigenvectors().col(i);
    fix_phase(v);
    es.vectors[i] = v;
    if (i > 0 && es.values[i] - es.values[i - 1] < kDegenerateGap)
      es.degenerate = true;
  }
  return es;
}

double spectral_radius(const CMatrix &h) {
  if (h.rows() == 2) {
    const double mean = 0.5 * (h(0, 0).real() + h(1, 1).real());
    const double r = std::hypot(0.5 * (h(0, 0).real() - h(1, 1).real()), std::abs(h(0, 1)));
    return std::abs(mean) + r;
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

CMatrix step_unitary(const CMatrix &h, double dt) {
  const auto n = h.rows();
  if (n == 2) {
    // h = a0 + a.sigma  =>  exp(-i h dt) = e^{-i a0 dt} (cos|a|dt - i sin|a|dt a^.sigma)
    const double a0 = 0.5 * (h(0, 0).real() + h(1, 1).real());
    const Vec3 a(h(1, 0).real(), h(1, 0).imag(), 0.5 * (h(0, 0).real() - h(1, 1).real()));
    const double mag = a.norm();
    const double c = std::cos(mag * dt);
    const double s = mag > 0.0 ? std::sin(mag * dt) / mag : dt;
    CMatrix u = c * identity2() - Complex(0.0, s) * pauli_dot(a);
    return std::polar(1.0, -a0 * dt) * u;
  }
  const CMatrix id = CMatrix::Identity(n, n);
  const Complex half(0.0, 0.5 * dt);
  return (id + half * h).partialPivLu().solve(id - half * h);
}

namespace {

// Shared stepping loop; `apply` receives the one-step unitary.
template <class Apply>
void march(const HamiltonianSchedule &schedule, double step, Apply &&apply) {
  if (!(step > 0.0) || !std::isfinite(step))
    throw ArgumentError("time step must be positive");
  const double T = schedule.duration();
  if (T == 0.0)
    return;
  const auto nsteps = static_cast<long long>(std::ceil(T / step - 1e-12));
  const double dt = T / static_cast<double>(nsteps);
  for (long long k = 0; k < nsteps; ++k) {
    const double t_mid = (static_cast<double>(k) + 0.5) * dt;
    const CMatrix h = schedule.at(t_mid);
    if (spectral_radius(h) * dt >= 0.1)
      throw ArgumentError("step too coarse: step * ||H|| must stay below 0.1");
    apply(t_mid, dt, h);
  }
}

} // namespace

StateVector evolve(const HamiltonianSchedule &schedule, const StateVector &psi0, double step,
                   const StepObserver &observer) {
  CVector psi = psi0.amplitudes();
  march(schedule, step, [&](double t_mid, double dt, const CMatrix &h) {
    if (h.rows() != psi.size())
      throw ScheduleError("schedule dimension does not match the state");
    if (observer)
      observer(t_mid, dt, h, psi);
    psi = step_unitary(h, dt) * psi;
  });
  // Renormalise away the O(1e-16) per-step rounding so the result is a valid state.
  return StateVector::normalized(std::move(psi));
}

CMatrix propagator(const HamiltonianSchedule &schedule, double step) {
  CMatrix u;
  march(schedule, step, [&](double, double dt, const CMatrix &h) {
    if (u.size() == 0)
      u = CMatrix::Identity(h.rows(), h.cols());
    u = step_unitary(h, dt) * u;
  });
  if (u.size() == 0)
    u = CMatrix::Identity(schedule.at(0.0).rows(), schedule.at(0.0).rows());
  return u;
}

PhaseDecomposition phase_decompose(const HamiltonianSchedule &schedule, const StateVector &psi0,
                                   double step, double min_overlap) {
  double dyn = 0.0;
  // Within a midpoint step H is frozen, so <psi|H|psi> is exactly constant.
  const StateVector psiT = evolve(schedule, psi0, step,
                                  [&](double, double dt, const CMatrix &h, const CVector &psi) {
                                    dyn -= psi.dot(h * psi).real() * dt;
                                  });
  const Complex ov = psi0.amplitudes().dot(psiT.amplitudes());
  PhaseDecomposition pd;
  pd.overlap = std::abs(ov);
  if (pd.overlap < min_overlap)
    throw CyclicityError("evolution is not cyclic: overlap " + std::to_string(pd.overlap),
                         pd.overlap);
  pd.total = wrap_phase(std::arg(ov));
  pd.dynamical = dyn;
  pd.geometric = wrap_phase(pd.total - pd.dynamical);
  return pd;
}

} // namespace adiabat::qcore
