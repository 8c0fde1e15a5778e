#pragma once

// Small dense quantum kernel: states, Hermitian operators, Pauli algebra,
// eigen-decomposition and unitary time stepping (hbar = 1).

#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace adiabat::qcore {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using Vec3 = Eigen::Vector3d;

inline constexpr double kPi = 3.14159265358979323846;

/// Reduce an angle into (-pi, pi].
double wrap_phase(double angle);

/// Smallest distance between two angles on the circle, in [0, pi].
double phase_distance(double a, double b);

/// Normalised complex amplitude vector.
class StateVector {
public:
  /// Throws ArgumentError unless the norm is 1 within 1e-12.
  explicit StateVector(CVector amplitudes);
  /// Rescales to unit norm; throws on a zero vector.
  static StateVector normalized(CVector amplitudes);

  const CVector &amplitudes() const noexcept { return amps_; }
  Eigen::Index size() const noexcept { return amps_.size(); }
  Complex operator[](Eigen::Index i) const { return amps_[i]; }

private:
  CVector amps_;
};

/// Square matrix equal to its conjugate transpose within 1e-12.
class HermitianOperator {
public:
  explicit HermitianOperator(CMatrix entries);

  const CMatrix &matrix() const noexcept { return m_; }
  Eigen::Index dim() const noexcept { return m_.rows(); }

private:
  CMatrix m_;
};

/// True when `m` is square and Hermitian within `tol` (max-abs entry).
bool is_hermitian(const CMatrix &m, double tol = 1e-12);

CMatrix identity2();
CMatrix sigma1();
CMatrix sigma2();
CMatrix sigma3();

/// a0 * 1 + a . sigma
CMatrix pauli_combination(double a0, const Vec3 &a);
inline CMatrix pauli_dot(const Vec3 &a) { return pauli_combination(0.0, a); }

/// Time-dependent Hamiltonian on [0, duration]. Output is checked for
/// hermiticity on every query; a violation raises ScheduleError.
class HamiltonianSchedule {
public:
  using Evaluator = std::function<CMatrix(double)>;

  HamiltonianSchedule(Evaluator evaluator, double duration);
  /// Convenience for a time-independent operator.
  static HamiltonianSchedule constant(const CMatrix &h, double duration);

  CMatrix at(double t) const;
  double duration() const noexcept { return duration_; }

private:
  Evaluator eval_;
  double duration_;
};

struct Eigensystem {
  std::vector<double> values;   // ascending
  std::vector<CVector> vectors; // orthonormal, matching `values`
  bool degenerate = false;      // some adjacent gap below 1e-12
};

/// Eigenvalues ascending with orthonormal eigenvectors. The 2x2 case is solved
/// in closed form. Each eigenvector is phase-fixed so its largest-modulus
/// component is real and positive; this is cosmetic, every physical output of
/// the library is gauge invariant.
Eigensystem instantaneous_eigensystem(const HermitianOperator &op);
Eigensystem instantaneous_eigensystem(const CMatrix &h);

/// Largest |eigenvalue| of a Hermitian matrix.
double spectral_radius(const CMatrix &h);

/// One-step propagator exp(-i h dt). Closed form for 2x2; for larger
/// matrices the unitary Cayley form (1 + i h dt/2)^-1 (1 - i h dt/2).
CMatrix step_unitary(const CMatrix &h, double dt);

/// Called once per step with the midpoint time, the step, the midpoint
/// Hamiltonian and the state at the start of the step.
using StepObserver = std::function<void(double t_mid, double dt, const CMatrix &h_mid,
                                        const CVector &psi_start)>;

/// Midpoint-exponential evolution over [0, T]. `step` is an upper bound; the
/// actual step is T / ceil(T / step). Requires step * max||H|| < 0.1.
StateVector evolve(const HamiltonianSchedule &schedule, const StateVector &psi0, double step,
                   const StepObserver &observer = {});

/// Full propagator U(T, 0) built with the same stepping as `evolve`.
CMatrix propagator(const HamiltonianSchedule &schedule, double step);

struct PhaseDecomposition {
  double total = 0.0;     // arg <psi0|psi(T)>, in (-pi, pi]
  double dynamical = 0.0; // -int <psi|H|psi> dt, not reduced
  double geometric = 0.0; // total - dynamical, reduced to (-pi, pi]
  double overlap = 0.0;   // |<psi0|psi(T)>|
};

/// Total/dynamical/geometric split of a cyclic evolution. Throws
/// CyclicityError when |<psi0|psi(T)>| < `min_overlap`.
PhaseDecomposition phase_decompose(const HamiltonianSchedule &schedule, const StateVector &psi0,
                                   double step, double min_overlap = 0.99);

} // namespace adiabat::qcore
