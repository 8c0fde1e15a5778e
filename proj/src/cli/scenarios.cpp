#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>

#include "adiabat/abduality.hpp"
#include "adiabat/analogs.hpp"
#include "adiabat/berry.hpp"
#include "adiabat/cli.hpp"
#include "adiabat/parallel.hpp"
#include "adiabat/qcore.hpp"
#include "adiabat/scattering.hpp"
#include "adiabat/topology.hpp"

namespace adiabat::cli {

namespace {

using qcore::kPi;
using qcore::Vec3;

double num(const ParamMap &p, const std::string &key) { return std::get<double>(p.at(key)); }
std::string str(const ParamMap &p, const std::string &key) { return std::get<std::string>(p.at(key)); }

std::size_t count(const ParamMap &p, const std::string &key, double min) {
  const double v = num(p, key);
  if (!(v >= min) || v != std::floor(v) || v > 1e12)
    throw ConfigError("parameter '" + key + "' must be an integer >= " + format_double(min));
  return static_cast<std::size_t>(v);
}

std::vector<double> number_list(const std::string &text, const std::string &key) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (item.find_first_not_of(" \t", used) != std::string::npos)
        throw std::invalid_argument(item);
    } catch (const std::exception &) {
      throw ConfigError("parameter '" + key + "' has a bad entry '" + item + "'");
    }
  }
  if (out.empty())
    throw ConfigError("parameter '" + key + "' is empty");
  return out;
}

std::vector<std::pair<double, double>> pair_list(const std::string &text, const std::string &key) {
  std::vector<std::pair<double, double>> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos)
      throw ConfigError("parameter '" + key + "' entries must look like a:b");
    const auto a = number_list(item.substr(0, colon), key);
    const auto b = number_list(item.substr(colon + 1), key);
    out.emplace_back(a.front(), b.front());
  }
  if (out.empty())
    throw ConfigError("parameter '" + key + "' is empty");
  return out;
}

std::string g6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

Check check(std::string name, bool pass, std::string detail) {
  return {std::move(name), pass, std::move(detail)};
}

// ---------------------------------------------------------------------------
// Berry phases

Vec3 bloch(const qcore::CVector &psi) {
  const auto c = std::conj(psi[0]) * psi[1];
  return {2.0 * c.real(), 2.0 * c.imag(), std::norm(psi[0]) - std::norm(psi[1])};
}

double equator_wilson(double A, std::size_t samples) {
  return berry::wilson_loop_phase(
      [A](const berry::Point &r) { return berry::spin_coupling(A * r); },
      berry::latitude_loop(kPi / 2.0, samples).as_parameter_loop(), 0);
}

qcore::PhaseDecomposition equator_dynamics(double A, double w, double step) {
  return qcore::phase_decompose(berry::equatorial_schedule(A, w),
                                berry::spin_ground_state(Vec3(1.0, 0.0, 0.0)),
                                std::min(step, 0.09 / A));
}

ScenarioOutput berry_equator(const ParamMap &p) {
  const double A = num(p, "A"), w = num(p, "w"), step = num(p, "step"), scale = num(p, "scale");
  const auto samples = count(p, "samples", 8);
  if (!(A > 0.0) || !(w > 0.0) || !(step > 0.0) || !(scale > 0.0))
    throw ConfigError("A, w, step and scale must be positive");
  ScenarioOutput out;

  const auto dec = equator_dynamics(A, w, step);
  const double wilson = equator_wilson(A, samples);
  const auto dec_s = equator_dynamics(scale * A, w, step);
  const double wilson_s = equator_wilson(scale * A, samples);
  auto &r = out.results;
  r["total_phase"] = dec.total;
  r["dynamical_phase"] = dec.dynamical;
  r["geometric_phase"] = dec.geometric;
  r["overlap"] = dec.overlap;
  r["wilson_phase"] = wilson;
  r["scaled_geometric_phase"] = dec_s.geometric;
  r["scaled_wilson_phase"] = wilson_s;
  out.checks.push_back(check("geometric_phase_pi", qcore::phase_distance(dec.geometric, kPi) <= 0.05,
                             "geometric " + g6(dec.geometric) + ", tolerance 0.05"));
  out.checks.push_back(check("wilson_phase_pi", qcore::phase_distance(wilson, kPi) <= 1e-3,
                             "wilson " + g6(wilson) + ", tolerance 1e-3"));
  const double dw = qcore::phase_distance(wilson, wilson_s);
  const double dg = qcore::phase_distance(dec.geometric, dec_s.geometric);
  out.checks.push_back(check("strength_independence_wilson", dw < 1e-12,
                             "change " + g6(dw) + " under A x " + g6(scale)));
  out.checks.push_back(check("strength_independence_dynamics", dg < 2.0 * w / A,
                             "change " + g6(dg) + ", bound 2w/A = " + g6(2.0 * w / A)));

  // Rotating frame at a larger w/A, averaged over whole periods.
  const double ratio = num(p, "frame_ratio");
  const auto periods = count(p, "frame_periods", 1);
  const auto frame = berry::rotating_frame(A, ratio * A);
  const double wf = ratio * A;
  double weighted = 0.0, elapsed = 0.0;
  qcore::evolve(
      qcore::HamiltonianSchedule(
          [&](double t) { return qcore::pauli_dot(A * Vec3(std::cos(wf * t), std::sin(wf * t), 0.0)); },
          periods * 2.0 * kPi / wf),
      berry::spin_ground_state(Vec3(1.0, 0.0, 0.0)), std::min(step, 0.09 / A),
      [&](double, double dt, const qcore::CMatrix &, const qcore::CVector &psi) {
        weighted += bloch(psi).z() * dt;
        elapsed += dt;
      });
  const double avg = weighted / elapsed;
  r["frame_sigma3_analytic"] = frame.sigma3_expectation;
  r["frame_sigma3_numeric"] = avg;
  out.checks.push_back(check("frame_sigma3_exact", frame.sigma3_expectation == wf / (2.0 * A),
                             "analytic " + g6(frame.sigma3_expectation)));
  out.checks.push_back(check("frame_sigma3_numeric",
                             std::abs(avg - frame.sigma3_expectation) <= ratio * ratio,
                             "numeric " + g6(avg) + " vs " + g6(frame.sigma3_expectation) +
                                 ", bound (w/A)^2"));
  double worst = 0.0;
  for (const auto &[a, ww] : pair_list(str(p, "frame_pairs"), "frame_pairs"))
    worst = std::max(worst, std::abs(berry::rotating_frame(a, ww).accumulated_phase - kPi));
  r["frame_phase_max_error"] = worst;
  out.checks.push_back(check("frame_phase_pi", worst < 1e-12, "max |phase - pi| " + g6(worst)));

  Table t{"bloch", {"t", "sx", "sy", "sz"}, {"time", "1", "1", "1"}, {}};
  const double T = 2.0 * kPi / w;
  const std::size_t stride = std::max<std::size_t>(1, static_cast<std::size_t>(T / step) / 400);
  std::size_t k = 0;
  qcore::evolve(berry::equatorial_schedule(A, w), berry::spin_ground_state(Vec3(1.0, 0.0, 0.0)),
                std::min(step, 0.09 / A),
                [&](double tm, double dt, const qcore::CMatrix &, const qcore::CVector &psi) {
                  if (k++ % stride == 0) {
                    const Vec3 b = bloch(psi);
                    t.rows.push_back({tm - 0.5 * dt, b.x(), b.y(), b.z()});
                  }
                });
  out.tables.push_back(std::move(t));
  return out;
}

double latitude_wilson(double A, double theta, std::size_t samples) {
  return berry::wilson_loop_phase(
      [A](const berry::Point &r) { return berry::spin_coupling(A * r); },
      berry::latitude_loop(theta, samples).as_parameter_loop(), 0);
}

ScenarioOutput berry_latitude(const ParamMap &p) {
  const double A = num(p, "A");
  const auto samples = count(p, "samples", 8);
  if (!(A > 0.0))
    throw ConfigError("A must be positive");
  ScenarioOutput out;
  Table t{"latitude", {"theta_deg", "wilson_phase", "expected", "half_solid_angle"},
          {"deg", "rad", "rad", "rad"}, {}};
  double worst = 0.0, worst_solid = 0.0;
  for (double deg : number_list(str(p, "thetas_deg"), "thetas_deg")) {
    if (!(deg > 0.0 && deg < 180.0))
      throw ConfigError("latitudes must lie strictly between 0 and 180 degrees");
    const double th = deg * kPi / 180.0;
    const double phase = latitude_wilson(A, th, samples);
    const double expected = qcore::wrap_phase(kPi * (1.0 - std::cos(th)));
    const double half = qcore::wrap_phase(0.5 * berry::solid_angle(berry::latitude_loop(th, samples)));
    worst = std::max(worst, qcore::phase_distance(phase, expected));
    worst_solid = std::max(worst_solid, qcore::phase_distance(phase, half));
    t.rows.push_back({deg, phase, expected, half});
  }
  out.results["max_error"] = worst;
  out.results["max_solid_angle_mismatch"] = worst_solid;
  out.checks.push_back(check("latitude_law", worst <= 1e-3, "max error " + g6(worst)));
  out.checks.push_back(
      check("solid_angle_rule", worst_solid <= 1e-9, "max |wilson - Omega/2| " + g6(worst_solid)));
  out.tables.push_back(std::move(t));
  return out;
}

ScenarioOutput berry_wilson_sweep(const ParamMap &p) {
  const double A = num(p, "A"), deg = num(p, "theta_deg");
  const auto n_min = count(p, "n_min", 4), n_max = count(p, "n_max", 4);
  if (n_max < n_min || !(A > 0.0) || !(deg > 0.0 && deg < 180.0))
    throw ConfigError("need n_min <= n_max, A > 0 and 0 < theta_deg < 180");
  const double th = deg * kPi / 180.0;
  const double expected = qcore::wrap_phase(kPi * (1.0 - std::cos(th)));
  ScenarioOutput out;
  Table t{"convergence", {"samples", "wilson_phase", "error"}, {"1", "rad", "rad"}, {}};
  bool monotone = true;
  double prev = INFINITY, err = 0.0;
  for (std::size_t n = n_min; n <= n_max; n *= 2) {
    const double phase = latitude_wilson(A, th, n);
    err = qcore::phase_distance(phase, expected);
    monotone = monotone && err <= prev + 1e-12;
    prev = err;
    t.rows.push_back({static_cast<double>(n), phase, err});
  }
  out.results["expected"] = expected;
  out.results["final_error"] = err;
  out.checks.push_back(check("converged", err <= 1e-3, "final error " + g6(err)));
  out.checks.push_back(check("error_non_increasing", monotone, monotone ? "yes" : "no"));
  out.tables.push_back(std::move(t));
  return out;
}

// ---------------------------------------------------------------------------
// Topology

using topology::Curve3D;
using Mat3 = Eigen::Matrix3d;

ScenarioOutput linking(const ParamMap &p) {
  const double ra = num(p, "radius_a"), rb = num(p, "radius_b"), off = num(p, "offset");
  const double tilt = num(p, "tilt_deg") * kPi / 180.0;
  const auto samples = count(p, "samples", 8);
  const auto a = topology::circle(Vec3::Zero(), Vec3::UnitX(), Vec3::UnitY(), ra, samples);
  const auto b = topology::circle(Vec3(off, 0.0, 0.0), Vec3::UnitX(),
                                  Vec3(0.0, std::cos(tilt), std::sin(tilt)), rb, samples);
  const int L = topology::linking_number(a, b);
  const int Lba = topology::linking_number(b, a);
  const int Lrev = topology::linking_number(a.reversed(), b);
  ScenarioOutput out;
  out.results["linking_number"] = L;
  out.results["gauss_sum"] = topology::gauss_linking_sum(a, b);
  out.results["min_distance"] = topology::min_curve_distance(a, b);
  out.checks.push_back(check("symmetric", L == Lba, std::to_string(L) + " vs " + std::to_string(Lba)));
  out.checks.push_back(check("orientation_flip", Lrev == -L, "reversed " + std::to_string(Lrev)));
  Table t{"curves", {"s", "ax", "ay", "az", "bx", "by", "bz"}, {"1", "1", "1", "1", "1", "1", "1"}, {}};
  for (std::size_t k = 0; k < a.points().size(); ++k) {
    const Vec3 &u = a.points()[k], &v = b.points()[k];
    t.rows.push_back({static_cast<double>(k) / samples, u.x(), u.y(), u.z(), v.x(), v.y(), v.z()});
  }
  out.tables.push_back(std::move(t));
  return out;
}

struct Frame {
  Mat3 Q = Mat3::Identity();
  Vec3 c = Vec3::Zero();
  Vec3 local(const Vec3 &r) const { return Q.transpose() * (r - c); }
  Vec3 world(const Vec3 &l) const { return Q * l + c; }
};

topology::RealFieldHamiltonian ring_field(double rho, Frame f) {
  return {[=](const Vec3 &r) { return f.local(r).z(); },
          [=](const Vec3 &r) {
            const Vec3 l = f.local(r);
            return l.x() * l.x() + l.y() * l.y() - rho * rho;
          }};
}

topology::RealFieldHamiltonian line_field(Frame f) {
  return {[=](const Vec3 &r) { return f.local(r).x(); },
          [=](const Vec3 &r) { return f.local(r).y(); }};
}

// Winds `wind_axis` times around the local z axis and `wind_tube` times
// around the circle of radius R in the local xy plane.
Curve3D torus_curve(const Frame &f, double R, double a, int wind_axis, int wind_tube,
                    std::size_t samples) {
  std::vector<Vec3> pts;
  for (std::size_t k = 0; k <= samples; ++k) {
    const double s = static_cast<double>(k % samples) / samples;
    const double u = 2.0 * kPi * wind_axis * s, v = 2.0 * kPi * wind_tube * s;
    pts.push_back(f.world(Vec3((R + a * std::cos(v)) * std::cos(u),
                               (R + a * std::cos(v)) * std::sin(u), a * std::sin(v))));
  }
  return Curve3D(std::move(pts));
}

Curve3D frame_circle(const Frame &f, const Vec3 &centre, const Vec3 &u, const Vec3 &v, double r,
                     std::size_t samples) {
  return topology::circle(f.world(centre), f.Q * u, f.Q * v, r, samples);
}

struct TopoCase {
  std::string label;
  topology::RealFieldHamiltonian field;
  Curve3D probe;
};

std::vector<TopoCase> topo_cases(std::size_t n) {
  const Vec3 X = Vec3::UnitX(), Y = Vec3::UnitY(), Z = Vec3::UnitZ();
  const Frame id;
  Frame tilted;
  tilted.Q = Eigen::AngleAxisd(0.7, X).toRotationMatrix() * Eigen::AngleAxisd(0.3, Z).toRotationMatrix();
  tilted.c = Vec3(0.3, -0.2, 0.1);
  std::vector<TopoCase> cs;
  cs.push_back({"ring, threaded circle", ring_field(1.0, id), frame_circle(id, X, X, Z, 0.3, n)});
  cs.push_back({"ring, outside circle", ring_field(1.0, id), frame_circle(id, 2.0 * X, X, Z, 0.3, n)});
  cs.push_back({"ring, coplanar inner circle", ring_field(1.0, id), frame_circle(id, Vec3::Zero(), X, Y, 0.5, n)});
  cs.push_back({"ring, threaded from y", ring_field(1.0, id), frame_circle(id, Y, Y, Z, 0.5, n)});
  cs.push_back({"ring, circle through the disk twice", ring_field(1.0, id), frame_circle(id, Vec3::Zero(), X, Z, 0.6, n)});
  cs.push_back({"tilted ring, threaded circle", ring_field(1.2, tilted), frame_circle(tilted, 1.2 * X, X, Z, 0.4, n)});
  cs.push_back({"tilted ring, distant circle", ring_field(1.2, tilted), topology::circle(Vec3(3.0, 0.0, 0.0), X, Y, 0.5, n)});
  cs.push_back({"ring, double winding", ring_field(1.0, id), torus_curve(id, 1.0, 0.3, 1, 2, 2 * n)});
  cs.push_back({"ring, triple winding", ring_field(1.0, id), torus_curve(id, 1.0, 0.3, 1, 3, 3 * n)});
  cs.push_back({"line, encircling circle", line_field(id), frame_circle(id, Vec3::Zero(), X, Y, 1.0, n)});
  cs.push_back({"line, offset circle", line_field(id), frame_circle(id, 3.0 * X, X, Y, 1.0, n)});
  cs.push_back({"line, double winding", line_field(id), torus_curve(id, 1.0, 0.3, 2, 1, 2 * n)});
  cs.push_back({"line, triple winding", line_field(id), torus_curve(id, 1.0, 0.3, 3, 1, 3 * n)});
  cs.push_back({"tilted line, encircling circle", line_field(tilted), frame_circle(tilted, Vec3::Zero(), X, Y, 0.8, n)});
  return cs;
}

ScenarioOutput topo_phase(const ParamMap &p, unsigned jobs) {
  const auto n = count(p, "samples", 16);
  const double half = num(p, "box_half_width"), reach = num(p, "reach");
  const auto n_max = count(p, "n_max", 2);
  const auto cases = topo_cases(n);
  const topology::Box box{Vec3::Constant(-half), Vec3::Constant(half)};

  struct Row {
    int linking;
    double gauss, wilson, predicted;
    bool closed;
  };
  const auto rows = parallel_map(cases.size(), jobs, [&](std::size_t i) {
    const auto &c = cases[i];
    const auto traced = topology::degeneracy_curve(c.field, box);
    const Curve3D cstar = traced.closed ? Curve3D(traced.points)
                                        : topology::close_at_infinity(traced.points, reach);
    const auto &probe = c.probe.points();
    std::vector<berry::Point> pts;
    for (const Vec3 &q : probe)
      pts.push_back(q);
    const double w = berry::wilson_loop_phase(
        [&](const berry::Point &r) {
          const Vec3 v(r[0], r[1], r[2]);
          return qcore::pauli_dot(Vec3(c.field.a1(v), 0.0, c.field.a3(v)));
        },
        berry::ParameterLoop(std::move(pts), true), 0);
    return Row{topology::linking_number(c.probe, cstar), topology::gauss_linking_sum(c.probe, cstar),
               w, topology::topological_phase_predict(c.probe, cstar), traced.closed};
  });

  ScenarioOutput out;
  Table t{"pairs", {"case", "linking_number", "gauss_sum", "wilson_phase", "predicted_phase", "cstar_closed"},
          {"1", "1", "1", "rad", "rad", "1"}, {}};
  bool quantised = true, rule = true;
  Json labels = Json::array();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto &r = rows[i];
    const double d0 = qcore::phase_distance(r.wilson, 0.0), dpi = qcore::phase_distance(r.wilson, kPi);
    quantised = quantised && std::min(d0, dpi) <= 1e-2;
    const bool odd = (r.linking % 2) != 0;
    rule = rule && (odd ? dpi <= 1e-2 : d0 <= 1e-2) && r.predicted == (odd ? kPi : 0.0);
    t.rows.push_back({static_cast<double>(i), static_cast<double>(r.linking), r.gauss, r.wilson,
                      r.predicted, r.closed ? 1.0 : 0.0});
    labels.push_back(cases[i].label);
  }
  out.results["cases"] = labels;
  out.results["pair_count"] = rows.size();
  out.checks.push_back(check("enough_pairs", rows.size() >= 10, std::to_string(rows.size()) + " pairs"));
  out.checks.push_back(check("phase_quantised", quantised, "wilson phases within 1e-2 of {0, pi}"));
  out.checks.push_back(check("odd_linking_gives_pi", rule, "pi exactly when linking number is odd"));

  Table d{"degeneracy_count", {"n", "parameter_dim", "real_codimension", "degeneracy_dim"},
          {"1", "1", "1", "1"}, {}};
  for (std::size_t k = 2; k <= n_max; ++k) {
    const auto c = topology::degeneracy_count(static_cast<int>(k));
    d.rows.push_back({static_cast<double>(c.n), static_cast<double>(c.parameter_dim),
                      static_cast<double>(c.real_codimension), static_cast<double>(c.degeneracy_dim)});
  }
  const auto two = topology::degeneracy_count(2);
  out.checks.push_back(check("two_level_curve", two.real_codimension == 2,
                             "real codimension " + std::to_string(two.real_codimension)));
  out.tables.push_back(std::move(t));
  out.tables.push_back(std::move(d));
  return out;
}

// ---------------------------------------------------------------------------
// Scattering

ScenarioOutput scatter_phase(const ParamMap &p) {
  using namespace scattering;
  const double pp = num(p, "p"), m = num(p, "m"), X = num(p, "X"), gamma = num(p, "gamma");
  ScatteringConfig bare{pp, m, X, DeltaBarrier{0.0}};
  ScatteringConfig strong{pp, m, X, DeltaBarrier{gamma}};
  const double phase0 = reflection_phase(bare);
  const double phase = reflection_phase(strong);
  const double extra = qcore::wrap_phase(phase - phase0);
  const double expected = qcore::wrap_phase(-2.0 * pp * X);
  const double closed = delta_reflection_phase_closed_form(pp, m, X, gamma);

  ScenarioOutput out;
  auto &r = out.results;
  r["phase_no_barrier"] = phase0;
  r["phase_barrier"] = phase;
  r["extra_phase"] = extra;
  r["expected_extra_phase"] = expected;
  r["closed_form_phase"] = closed;
  r["naive_force"] = naive_force_estimate(pp, X, m, num(p, "Y0"));
  out.checks.push_back(check("no_barrier_phase_pi", qcore::phase_distance(phase0, kPi) <= 1e-3,
                             "arg r " + g6(phase0)));
  out.checks.push_back(check("extra_phase_2pX", qcore::phase_distance(extra, expected) <= 1e-3,
                             "extra " + g6(extra) + " vs " + g6(expected)));
  out.checks.push_back(check("closed_form", qcore::phase_distance(phase, closed) <= 1e-9,
                             "closed form " + g6(closed)));

  const auto n = count(p, "Y_samples", 2);
  const double w = num(p, "w"), Y0 = num(p, "Y0");
  const auto profile = ProbeProfile::exponential(num(p, "gamma_w"), w, Y0);
  std::vector<double> Y;
  for (std::size_t k = 0; k < n; ++k)
    Y.push_back(w + (Y0 - w) * (k + 1.0) / n);
  const auto tab = phase_vs_Y(profile, bare, Y);
  r["total_variation"] = tab.total_variation;
  r["winding_count"] = tab.winding_count;
  Table t{"phase_vs_Y", {"Y", "gamma", "phase", "unwrapped"}, {"length", "energy*length", "rad", "rad"}, {}};
  for (const auto &row : tab.rows)
    t.rows.push_back({row.Y, row.gamma, row.phase, row.unwrapped});
  out.tables.push_back(std::move(t));
  return out;
}

ScenarioOutput scatter_bounce(const ParamMap &p, std::uint64_t seed, unsigned jobs) {
  using namespace scattering;
  const double eps = num(p, "epsilon"), pp = num(p, "p");
  const auto trials = count(p, "trials", 1);
  const auto terms = count(p, "terms", 1);
  const BounceChain chain{eps, pp};
  const auto e = bounce_chain_expectation(chain);

  ScenarioOutput out;
  auto &r = out.results;
  r["first_kick"] = e.first_kick;
  r["trapped_kicks"] = e.trapped_kicks;
  r["net_momentum"] = e.net_momentum;
  r["trap_probability"] = e.trap_probability;
  r["trapped_dwell"] = e.trapped_dwell;
  bool exact = e.net_momentum == 0.0;
  Json nets = Json::object();
  for (double x : number_list(str(p, "epsilons"), "epsilons")) {
    const double net = bounce_chain_expectation({x, pp}).net_momentum;
    nets[format_double(x)] = net;
    exact = exact && net == 0.0;
  }
  r["net_momentum_by_epsilon"] = nets;
  out.checks.push_back(check("net_momentum_exactly_zero", exact, "expected net momentum over all epsilons"));

  Table t{"partial_sums", {"terms", "trapped_kicks", "net_momentum"}, {"1", "momentum", "momentum"}, {}};
  double partial = 0.0;
  for (std::size_t k = 1; k <= terms; ++k) {
    partial = bounce_chain_partial_kicks(chain, static_cast<int>(k));
    t.rows.push_back({static_cast<double>(k), partial, e.first_kick + partial});
  }
  const double tail = std::abs(partial - e.trapped_kicks);
  const double bound = 2.0 * pp * std::pow(1.0 - eps, static_cast<double>(terms)) + 1e-12;
  out.checks.push_back(check("partial_sums_converge", tail <= bound,
                             "tail " + g6(tail) + ", bound " + g6(bound)));

  const auto s = bounce_chain_sample(chain, trials, seed, jobs);
  r["mc_mean_net_momentum"] = s.mean_net_momentum;
  r["mc_net_standard_error"] = s.net_standard_error;
  r["mc_mean_dwell"] = s.mean_dwell;
  r["mc_dwell_standard_error"] = s.dwell_standard_error;
  r["mc_trials"] = s.trials;
  r["mc_trapped_trials"] = s.trapped_trials;
  r["mc_first_nets"] = s.first_nets;
  out.checks.push_back(check("mc_net_consistent", std::abs(s.mean_net_momentum) <= 5.0 * s.net_standard_error,
                             g6(s.mean_net_momentum) + " +- " + g6(s.net_standard_error)));
  out.checks.push_back(check("mc_dwell_consistent",
                             std::abs(s.mean_dwell - e.trapped_dwell) <= 5.0 * s.dwell_standard_error,
                             g6(s.mean_dwell) + " +- " + g6(s.dwell_standard_error) + " vs " +
                                 g6(e.trapped_dwell)));
  out.tables.push_back(std::move(t));
  return out;
}

ScenarioOutput scatter_wavepacket(const ParamMap &p) {
  using namespace scattering;
  const double pp = num(p, "p"), m = num(p, "m"), eps = num(p, "epsilon");
  if (!(eps > 0.0 && eps < 1.0))
    throw ConfigError("epsilon must lie in (0, 1)");
  WavepacketRun run;
  run.L = num(p, "L");
  run.points = count(p, "points", 16);
  run.dt = num(p, "dt");
  run.x0 = num(p, "x0");
  run.sigma = num(p, "sigma");
  run.duration = num(p, "duration");
  run.record_every = count(p, "record_every", 1);
  const ScatteringConfig cfg{pp, m, num(p, "X"), DeltaBarrier{delta_strength_for_transmission(pp, m, eps)}};
  const auto res = wavepacket_run(run, cfg);
  const auto &s = res.summary;

  ScenarioOutput out;
  auto &r = out.results;
  r["short_kick"] = s.short_kick;
  r["long_kick"] = s.long_kick;
  r["expected_short_kick"] = 2.0 * pp * (1.0 - eps);
  r["epsilon_plane_wave"] = s.epsilon_plane_wave;
  r["epsilon_first_encounter"] = s.epsilon_first_encounter;
  r["decay_rate"] = s.decay_rate;
  r["round_trip_time"] = s.round_trip_time;
  r["efold_round_trips"] = s.efold_round_trips;
  r["max_norm_drift"] = s.max_norm_drift;
  r["bookkeeping_residual"] = s.bookkeeping_residual;
  r["short_window_end"] = s.short_window_end;
  r["duration"] = s.duration;
  r["grid_strength"] = s.grid_strength;
  const double want = 2.0 * pp * (1.0 - eps);
  out.checks.push_back(check("long_window_cancels", std::abs(s.long_kick) <= 0.05 * 2.0 * pp,
                             "long kick " + g6(s.long_kick) + ", bound " + g6(0.1 * pp)));
  out.checks.push_back(check("short_window_kick", std::abs(s.short_kick - want) <= 0.1 * want,
                             "short kick " + g6(s.short_kick) + " vs " + g6(want)));
  out.checks.push_back(check("dwell_1_over_epsilon",
                             std::abs(s.efold_round_trips * eps - 1.0) <= 0.2,
                             "e-fold " + g6(s.efold_round_trips) + " round trips vs " + g6(1.0 / eps)));
  out.checks.push_back(check("momentum_bookkeeping", s.bookkeeping_residual <= 1e-6,
                             "residual " + g6(s.bookkeeping_residual)));

  Table t{"series", {"t", "kick", "wall_impulse", "particle_momentum", "survival", "norm"},
          {"time", "momentum", "momentum", "momentum", "1", "1"}, {}};
  for (const auto &row : res.series)
    t.rows.push_back({row.t, row.kick, row.wall_impulse, row.particle_momentum, row.survival, row.norm});
  out.tables.push_back(std::move(t));
  return out;
}

// ---------------------------------------------------------------------------
// Duality

ScenarioOutput ab_electric(const ParamMap &p, std::uint64_t seed) {
  using namespace abduality;
  const CapacitorScenario base{num(p, "e"), num(p, "E"), num(p, "x"), num(p, "t")};
  const auto d = duality_report(base);
  const auto w = which_path_ratio(base, num(p, "localization"));
  ScenarioOutput out;
  auto &r = out.results;
  r["probe_phase"] = d.probe_phase;
  r["system_phase"] = d.system_phase;
  r["plate_momentum"] = d.plate_momentum;
  r["phase_match"] = d.match;
  r["which_path_ratio"] = w.ratio;
  r["phase_within_pi"] = w.phase_within_pi;
  r["fringes_destroyed"] = w.fringes_destroyed;
  r["fringe_visibility"] = gaussian_fringe_visibility(2.0 * d.plate_momentum, num(p, "localization"));
  out.checks.push_back(check("phase_match", d.match, g6(d.probe_phase) + " vs " + g6(d.system_phase)));

  const auto trials = count(p, "trials", 0);
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> logu(std::log(0.1), std::log(10.0)), unit(0.0, 1.0);
  Table t{"random", {"trial", "e", "E", "x", "t", "probe_phase", "system_phase", "which_path_ratio"},
          {"1", "charge", "field", "length", "time", "rad", "rad", "1"}, {}};
  bool all_match = true, all_ratio = true;
  for (std::size_t k = 0; k < trials; ++k) {
    CapacitorScenario s{std::exp(logu(gen)), std::exp(logu(gen)), std::exp(logu(gen)), 0.0};
    s.t = (1.0 - unit(gen)) * kPi / (2.0 * s.e * s.E * s.x);
    const double dX = (1.0 - unit(gen)) * s.x / 4.0;
    const auto rep = duality_report(s);
    const auto wp = which_path_ratio(s, dX);
    all_match = all_match && rep.match;
    all_ratio = all_ratio && wp.phase_within_pi && wp.ratio > 1.0;
    t.rows.push_back({static_cast<double>(k), s.e, s.E, s.x, s.t, rep.probe_phase, rep.system_phase, wp.ratio});
  }
  out.checks.push_back(check("random_phase_match", all_match, std::to_string(trials) + " scenarios"));
  out.checks.push_back(check("random_which_path", all_ratio, "ratio > 1 for dX <= x/4, 2eExt <= pi"));
  out.tables.push_back(std::move(t));
  return out;
}

// ---------------------------------------------------------------------------
// Analogs

ScenarioOutput pendulum_msw(const ParamMap &p, unsigned jobs) {
  using namespace analogs;
  const double g = num(p, "g"), l_mu = num(p, "l_mu"), kappa = num(p, "kappa");
  if (!(g > 0.0) || !(l_mu > 0.0) || !(kappa > 0.0))
    throw ConfigError("g, l_mu and kappa must be positive");
  const double eps = kappa / (2.0 * std::sqrt(g / l_mu));
  const double span = num(p, "span_epsilon") * eps;
  const double rate = num(p, "adiabatic_rate");
  const double duration = 2.0 * span / (rate * eps * eps);
  const auto samples = count(p, "samples", 1);
  const auto slow = pendulum_sweep(linear_frequency_sweep(g, l_mu, kappa, span, duration), duration, samples);
  const double fast_duration = num(p, "sudden_duration");
  const auto fast = pendulum_sweep(linear_frequency_sweep(g, l_mu, kappa, span, fast_duration), fast_duration, 1);
  const auto ladder = pendulum_rate_ladder(number_list(str(p, "ladder_rates"), "ladder_rates"), kappa, jobs);

  ScenarioOutput out;
  auto &r = out.results;
  r["epsilon"] = eps;
  r["adiabatic_duration"] = duration;
  r["adiabatic_transfer"] = slow.transfer_fraction;
  r["adiabatic_rate_over_eps2"] = slow.max_rate / (eps * eps);
  r["sudden_transfer"] = fast.transfer_fraction;
  r["frozen_energy_drift"] = slow.frozen_energy_drift;
  r["ladder_monotone"] = ladder.monotone;
  out.checks.push_back(check("adiabatic_transfer", slow.transfer_fraction >= 0.99,
                             "transfer " + g6(slow.transfer_fraction)));
  out.checks.push_back(check("sudden_transfer", fast.transfer_fraction <= 0.05,
                             "transfer " + g6(fast.transfer_fraction)));
  out.checks.push_back(check("ladder_monotone", ladder.monotone, "transfer grows as the sweep slows"));

  Table t{"adiabatic_series", {"t", "energy_e", "energy_mu"}, {"time", "energy/mass", "energy/mass"}, {}};
  for (const auto &s : slow.series)
    t.rows.push_back({s.t, s.energy_e, s.energy_mu});
  Table l{"ladder", {"rate_over_eps2", "transfer_fraction"}, {"1", "1"}, {}};
  for (std::size_t i = 0; i < ladder.rates.size(); ++i)
    l.rows.push_back({ladder.rates[i], ladder.fractions[i]});
  out.tables.push_back(std::move(t));
  out.tables.push_back(std::move(l));
  return out;
}

ScenarioOutput two_level(const ParamMap &p, unsigned jobs) {
  using namespace analogs;
  const auto pairs = pair_list(str(p, "pairs"), "pairs");
  const double tol = num(p, "tolerance");
  const auto res = parallel_map(pairs.size(), jobs, [&](std::size_t i) {
    return two_level_sweep({pairs[i].first, pairs[i].second});
  });
  ScenarioOutput out;
  Table t{"conversion", {"adiabaticity", "epsilon", "alpha", "conversion", "landau_zener", "relative_error", "flavor_conversion"},
          {"1", "energy", "energy/time", "1", "1", "1", "1"}, {}};
  double worst = 0.0;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto [e, a] = pairs[i];
    const double rel = std::abs(res[i].conversion - res[i].landau_zener) / res[i].landau_zener;
    worst = std::max(worst, rel);
    t.rows.push_back({kPi * e * e / a, e, a, res[i].conversion, res[i].landau_zener, rel, res[i].flavor_conversion});
  }
  out.results["max_relative_error"] = worst;
  out.results["pair_count"] = pairs.size();
  out.checks.push_back(check("landau_zener", worst <= tol, "max relative error " + g6(worst)));
  out.tables.push_back(std::move(t));
  return out;
}

ScenarioOutput rect_loop(const ParamMap &p) {
  using namespace analogs;
  const double e0 = num(p, "epsilon0"), d0 = num(p, "delta0"), off = num(p, "offset");
  const auto r = rectangular_loop_phase(e0, d0, count(p, "samples", 8), off, true, num(p, "adiabaticity"));
  const bool encloses = std::abs(off) < d0;
  const double expected = encloses ? kPi : 0.0;
  ScenarioOutput out;
  auto &res = out.results;
  res["wilson_phase"] = r.wilson_phase;
  res["expected_phase"] = expected;
  res["regime_warning"] = r.regime_warning;
  res["warning"] = r.warning;
  out.checks.push_back(check("wilson_phase", qcore::phase_distance(r.wilson_phase, expected) <= 1e-3,
                             "wilson " + g6(r.wilson_phase) + " vs " + g6(expected)));
  if (off == 0.0) {
    res["t_squared_re"] = r.t_squared.real();
    res["t_squared_im"] = r.t_squared.imag();
    res["half_loop_error"] = r.half_loop_error;
    res["dynamical_phase"] = r.dynamical_phase;
    out.checks.push_back(check("half_loop_squared", r.half_loop_error <= 1e-2,
                               "|T^2 + 1| = " + g6(r.half_loop_error)));
  }
  return out;
}

analogs::CelestialConfig celestial_config(const ParamMap &p) {
  analogs::CelestialConfig c;
  c.M_j = num(p, "M_j");
  c.R_j = num(p, "R_j");
  c.T_j = num(p, "T_j");
  c.eccentricity = num(p, "eccentricity");
  c.phi0 = num(p, "phi0");
  c.tolerance = num(p, "tolerance");
  return c;
}

ScenarioOutput celestial_frozen(const ParamMap &p, unsigned jobs) {
  using namespace analogs;
  const auto cfg = celestial_config(p);
  const int orbits = static_cast<int>(count(p, "orbits", 1));
  const auto n = count(p, "phi_points", 1);
  const double phi_ref = num(p, "phi_ref");
  const double T0 = cfg.kepler_period();

  CelestialConfig kepler = cfg;
  kepler.M_j = 0.0;
  const double kepler_err = std::abs(celestial_frozen_period(kepler, phi_ref, orbits) / T0 - 1.0);
  const double shift = celestial_frozen_period(cfg, phi_ref, orbits) / T0 - 1.0;
  CelestialConfig half = cfg;
  half.M_j *= 0.5;
  const double half_shift = celestial_frozen_period(half, phi_ref, orbits) / T0 - 1.0;
  const double fr = force_ratio(cfg);

  ScenarioOutput out;
  auto &r = out.results;
  r["kepler_period"] = T0;
  r["kepler_limit_error"] = kepler_err;
  r["force_ratio"] = fr;
  r["shift"] = shift;
  r["half_mass_shift"] = half_shift;
  r["half_mass_ratio"] = half_shift / shift;
  out.checks.push_back(check("kepler_limit", kepler_err <= 1e-8, "relative error " + g6(kepler_err)));
  out.checks.push_back(check("force_ratio", fr <= 1.3 * 5e-5 && fr >= 5e-5 / 1.3,
                             "force ratio " + g6(fr) + " vs 5e-5"));
  out.checks.push_back(check("shift_order_of_force_ratio",
                             std::abs(shift) >= 0.1 * fr && std::abs(shift) <= 10.0 * fr,
                             "shift " + g6(shift)));
  out.checks.push_back(check("half_mass_halves", std::abs(half_shift / shift - 0.5) <= 0.01,
                             "ratio " + g6(half_shift / shift)));

  const auto periods = parallel_map(n, jobs, [&](std::size_t k) {
    return celestial_frozen_period(cfg, 2.0 * kPi * k / n, orbits);
  });
  Table t{"frozen_period", {"phi", "period", "fractional_shift"}, {"rad", "time", "1"}, {}};
  for (std::size_t k = 0; k < n; ++k)
    t.rows.push_back({2.0 * kPi * k / n, periods[k], periods[k] / T0 - 1.0});
  out.tables.push_back(std::move(t));
  return out;
}

ScenarioOutput celestial_residual(const ParamMap &p, unsigned jobs) {
  using namespace analogs;
  const auto cfg = celestial_config(p);
  const auto r = celestial_adiabatic_residual(cfg, static_cast<int>(count(p, "periods", 1)),
                                              static_cast<int>(count(p, "phi_nodes", 1)), jobs);
  const double max_ratio = num(p, "max_ratio");
  const double ratio = std::abs(r.residual_per_cycle) / std::abs(r.dynamical_per_cycle);
  ScenarioOutput out;
  auto &res = out.results;
  res["elapsed"] = r.elapsed;
  res["full_phase"] = r.full_phase;
  res["adiabatic_phase"] = r.adiabatic_phase;
  res["kepler_phase"] = r.kepler_phase;
  res["residual"] = r.residual;
  res["residual_per_cycle"] = r.residual_per_cycle;
  res["dynamical_per_cycle"] = r.dynamical_per_cycle;
  res["residual_over_dynamical"] = ratio;
  res["refinement_change"] = r.refinement_change;
  out.checks.push_back(check("residual_small", ratio <= max_ratio,
                             "|residual/dynamical| per cycle " + g6(ratio) + ", bound " + g6(max_ratio)));
  return out;
}

ScenarioOutput monopole(const ParamMap &p) {
  const double e = num(p, "e"), g = num(p, "g"), R = num(p, "R");
  const double th = num(p, "theta_deg") * kPi / 180.0, ph = num(p, "phi_deg") * kPi / 180.0;
  const Vec3 n(std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), std::cos(th));
  berry::MonopoleQuadrature q;
  q.excision = num(p, "excision");
  q.nodes_per_panel = static_cast<int>(count(p, "nodes_per_panel", 2));
  q.azimuth_nodes = static_cast<int>(count(p, "azimuth_nodes", 4));
  const auto m = berry::monopole_field_angular_momentum(e, g, R, n, q);
  const double cosang = m.angular_momentum.dot(n) / m.magnitude;
  const double rel = m.magnitude / std::abs(e * g);
  ScenarioOutput out;
  auto &r = out.results;
  r["L"] = {m.angular_momentum.x(), m.angular_momentum.y(), m.angular_momentum.z()};
  r["magnitude"] = m.magnitude;
  r["magnitude_over_eg"] = rel;
  r["cosine_with_axis"] = cosang;
  r["refinement_change"] = m.refinement_change;
  out.checks.push_back(check("magnitude_eg", std::abs(rel - 1.0) <= 1e-3, "|L|/|eg| " + g6(rel)));
  out.checks.push_back(check("along_axis", std::abs(std::abs(cosang) - 1.0) <= 1e-9,
                             "cosine " + g6(cosang)));
  return out;
}

// ---------------------------------------------------------------------------

using Runner = std::function<ScenarioOutput(const ParamMap &, std::uint64_t, unsigned)>;

struct Entry {
  ScenarioSpec spec;
  Runner run;
};

const std::vector<Entry> &registry() {
  static const std::vector<Entry> entries = [] {
    auto P = [](std::string key, Param v, std::string unit, std::string help) {
      return ParamSpec{std::move(key), std::move(v), std::move(unit), std::move(help)};
    };
    const std::vector<ParamSpec> celestial = {
        P("M_j", 1e-3, "M_sun", "outer body mass"),
        P("R_j", 5.2, "R_e", "outer body orbit radius"),
        P("T_j", 0.0, "time", "outer body period, 0 for Kepler"),
        P("eccentricity", 0.0167, "1", "planet eccentricity, start at perihelion"),
        P("phi0", 0.0, "rad", "outer body angle at t = 0"),
        P("tolerance", 1e-12, "1", "integrator tolerance"),
    };
    auto with = [](std::vector<ParamSpec> base, std::vector<ParamSpec> extra) {
      base.insert(base.end(), extra.begin(), extra.end());
      return base;
    };
    std::vector<Entry> e;
    e.push_back({{"berry-equator",
                  "Spin-1/2 carried once around the equator: geometric phase pi, independence of field strength, rotating-frame tilt",
                  {P("A", 1.0, "energy", "field strength"),
                   P("w", 0.005, "1/time", "loop angular frequency"),
                   P("step", 0.05, "time", "time step bound"),
                   P("samples", 512.0, "1", "Wilson loop samples"),
                   P("scale", 5.0, "1", "field strength multiplier for the independence check"),
                   P("frame_ratio", 0.02, "1", "w/A for the rotating-frame average"),
                   P("frame_periods", 4.0, "1", "loop periods averaged"),
                   P("frame_pairs", std::string("1:0.02,2:0.01,0.5:0.05"), "energy:1/time", "(A, w) pairs for the accumulated phase")}},
                 [](const ParamMap &p, std::uint64_t, unsigned) { return berry_equator(p); }});
    e.push_back({{"berry-latitude", "Wilson-loop phase on latitude circles against half the enclosed solid angle",
                  {P("A", 1.0, "energy", "field strength"),
                   P("thetas_deg", std::string("30,60,90,120"), "deg", "polar angles"),
                   P("samples", 512.0, "1", "Wilson loop samples")}},
                 [](const ParamMap &p, std::uint64_t, unsigned) { return berry_latitude(p); }});
    e.push_back({{"berry-wilson-sweep", "Convergence of the discrete Wilson loop with the number of samples",
                  {P("A", 1.0, "energy", "field strength"),
                   P("theta_deg", 60.0, "deg", "polar angle"),
                   P("n_min", 8.0, "1", "smallest sample count"),
                   P("n_max", 4096.0, "1", "largest sample count (doubling)")}},
                 [](const ParamMap &p, std::uint64_t, unsigned) { return berry_wilson_sweep(p); }});
    e.push_back({{"linking", "Gauss linking number of two circles",
                  {P("radius_a", 1.0, "length", "circle a radius, centred at the origin in the xy plane"),
                   P("radius_b", 1.0, "length", "circle b radius"),
                   P("offset", 1.0, "length", "circle b centre on the x axis"),
                   P("tilt_deg", 90.0, "deg", "circle b plane tilt from xy about x"),
                   P("samples", 128.0, "1", "points per circle")}},
                 [](const ParamMap &p, std::uint64_t, unsigned) { return linking(p); }});
    e.push_back({{"topo-phase", "Real two-level Hamiltonians: probe loops linking the degeneracy curve pick up pi, others 0",
                  {P("samples", 400.0, "1", "probe samples per winding"),
                   P("box_half_width", 3.0, "length", "degeneracy search box half width"),
                   P("reach", 100.0, "length", "distance of the closure for open degeneracy lines"),
                   P("n_max", 5.0, "1", "largest level count in the dimension table")}},
                 [](const ParamMap &p, std::uint64_t, unsigned jobs) { return topo_phase(p, jobs); }});
    e.push_back({{"scatter-phase", "Reflection phase of a wall plus probe barrier: extra phase -2pX and its dependence on probe distance",
                  {P("p", 1.0, "momentum", "incident momentum"),
                   P("m", 1.0, "mass", "particle mass"),
                   P("X", 2.0, "length", "probe position"),
                   P("gamma", 1e6, "energy*length", "delta strength"),
                   P("w", 0.1, "length", "channel width"),
                   P("Y0", 10.0, "length", "probe range"),
                   P("gamma_w", 1e6, "energy*length", "strength at the channel"),
                   P("Y_samples", 200.0, "1", "probe distance samples")}},
                 [](const ParamMap &p, std::uint64_t, unsigned) { return scatter_phase(p); }});
    e.push_back({{"scatter-bounce", "Reflect/tunnel bounce chain: the trapped kicks cancel the first kick exactly",
                  {P("epsilon", 0.1, "1", "tunnelling probability"),
                   P("p", 1.0, "momentum", "particle momentum"),
                   P("trials", 1e6, "1", "Monte Carlo trials"),
                   P("terms", 400.0, "1", "partial sum length"),
                   P("epsilons", std::string("0.01,0.05,0.1,0.3,0.5,0.9"), "1", "extra epsilons for the exact check")}},
                 [](const ParamMap &p, std::uint64_t seed, unsigned jobs) { return scatter_bounce(p, seed, jobs); }});
    e.push_back({{"scatter-wavepacket", "Wavepacket against wall plus barrier: short-time kick, long-time cancellation, trapped decay",
                  {P("p", 1.0, "momentum", "mean momentum"),
                   P("m", 1.0, "mass", "particle mass"),
                   P("X", 50.0, "length", "barrier position"),
                   P("epsilon", 0.2, "1", "barrier transmission probability"),
                   P("L", 2400.0, "length", "domain length"),
                   P("points", 8192.0, "1", "grid points"),
                   P("dt", 0.05, "time", "time step"),
                   P("x0", 110.0, "length", "packet centre"),
                   P("sigma", 10.0, "length", "packet width"),
                   P("duration", 0.0, "time", "0 chooses from the geometry"),
                   P("record_every", 20.0, "1", "steps between records")}},
                 [](const ParamMap &p, std::uint64_t, unsigned) { return scatter_wavepacket(p); }});
    e.push_back({{"ab-electric", "Electric Aharonov-Bohm phase seen from the electron and from the capacitor plates",
                  {P("e", 1.0, "charge", "electron charge"),
                   P("E", 1.0, "field", "field between the plates"),
                   P("x", 1.0, "length", "plate separation"),
                   P("t", 1.0, "time", "dwell time"),
                   P("localization", 0.25, "length", "electron localisation dX"),
                   P("trials", 1000.0, "1", "random scenarios")}},
                 [](const ParamMap &p, std::uint64_t seed, unsigned) { return ab_electric(p, seed); }});
    e.push_back({{"pendulum-msw", "Coupled pendulums swept through resonance: adiabatic energy transfer versus sweep rate",
                  {P("g", 1.0, "length/time^2", "gravity"),
                   P("l_mu", 1.0, "length", "fixed pendulum length"),
                   P("kappa", 0.02, "1/time^2", "spring coupling"),
                   P("span_epsilon", 25.0, "1", "half sweep span in units of epsilon"),
                   P("adiabatic_rate", 0.01, "1", "slow sweep rate in units of epsilon^2"),
                   P("sudden_duration", 1e-3, "time", "fast sweep duration"),
                   P("ladder_rates", std::string("20,10,5,2.5,1.25"), "1", "sweep rates in units of epsilon^2"),
                   P("samples", 400.0, "1", "series samples")}},
                 [](const ParamMap &p, std::uint64_t, unsigned jobs) { return pendulum_msw(p, jobs); }});
    e.push_back({{"two-level-sweep", "Linear two-level sweep through an avoided crossing against Landau-Zener",
                  {P("pairs", std::string("0.5:1,0.3:0.2,0.2:0.1,1:4,0.1:0.05"), "energy:energy/time", "(epsilon, alpha) pairs"),
                   P("tolerance", 0.02, "1", "allowed relative error")}},
                 [](const ParamMap &p, std::uint64_t, unsigned jobs) { return two_level(p, jobs); }});
    e.push_back({{"rect-loop", "Rectangular loop around a real level crossing: phase pi and half-loop transport squaring to -1",
                  {P("epsilon0", 0.5, "energy", "rectangle half height"),
                   P("delta0", 10.0, "energy", "rectangle half width"),
                   P("samples", 2000.0, "1", "Wilson loop samples"),
                   P("offset", 0.0, "energy", "shift along Delta"),
                   P("adiabaticity", 0.001, "1", "transport speed factor")}},
                 [](const ParamMap &p, std::uint64_t, unsigned) { return rect_loop(p); }});
    e.push_back({{"celestial-frozen", "Planet period with the outer body frozen at each angle",
                  with(celestial, {P("orbits", 8.0, "1", "averaging window in orbits either side"),
                                   P("phi_points", 16.0, "1", "table angles"),
                                   P("phi_ref", 0.7, "rad", "angle for the scalar checks")})},
                 [](const ParamMap &p, std::uint64_t, unsigned jobs) { return celestial_frozen(p, jobs); }});
    e.push_back({{"celestial-residual", "Full planet phase against the frozen-period adiabatic prediction over outer periods",
                  with(celestial, {P("periods", 2.0, "1", "outer body periods"),
                                   P("phi_nodes", 32.0, "1", "angles in the adiabatic average"),
                                   P("max_ratio", 0.2, "1", "allowed |residual/dynamical| per cycle")})},
                 [](const ParamMap &p, std::uint64_t, unsigned jobs) { return celestial_residual(p, jobs); }});
    e.push_back({{"monopole-angmom", "Field angular momentum of a charge-monopole pair",
                  {P("e", 1.0, "charge", "electric charge"),
                   P("g", 1.0, "charge", "magnetic charge"),
                   P("R", 1.0, "length", "separation"),
                   P("theta_deg", 0.0, "deg", "charge direction polar angle"),
                   P("phi_deg", 0.0, "deg", "charge direction azimuth"),
                   P("excision", 0.01, "R", "excised ball radius"),
                   P("nodes_per_panel", 12.0, "1", "radial nodes per panel"),
                   P("azimuth_nodes", 8.0, "1", "azimuth nodes")}},
                 [](const ParamMap &p, std::uint64_t, unsigned) { return monopole(p); }});
    return e;
  }();
  return entries;
}

} // namespace

const std::vector<ScenarioSpec> &scenarios() {
  static const std::vector<ScenarioSpec> specs = [] {
    std::vector<ScenarioSpec> s;
    for (const auto &e : registry())
      s.push_back(e.spec);
    return s;
  }();
  return specs;
}

ScenarioOutput execute(const std::string &scenario, const ParamMap &params, std::uint64_t seed,
                       unsigned jobs) {
  for (const auto &e : registry())
    if (e.spec.name == scenario)
      return e.run(resolve(e.spec, params), seed, std::max(1u, jobs));
  throw ConfigError("unknown scenario '" + scenario + "'");
}

} // namespace adiabat::cli
