#include <algorithm>
#include <chrono>
#include <map>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include "adiabat/analogs.hpp"
#include "adiabat/berry.hpp"
#include "adiabat/cli.hpp"
#include "adiabat/qcore.hpp"
#include "adiabat/selfcheck.hpp"

namespace adiabat::selfcheck {

namespace {

namespace fs = std::filesystem;
using cli::Check;
using cli::ParamMap;

const char *const kTitles[kCriterionCount] = {
    "equatorial geometric phase",
    "latitude law",
    "strength and speed independence",
    "rotating frame",
    "topological rule",
    "scattering phases",
    "paradox resolution",
    "electric duality",
    "pendulum and two-level conversion",
    "rectangular loop",
    "celestial period shift",
    "infrastructure",
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Collects checks; an empty `names` keeps all of them.
struct Tally {
  std::vector<Check> checks;

  void add(const cli::ScenarioOutput &out, const std::string &scenario,
           const std::vector<std::string> &names = {}) {
    for (const auto &c : out.checks)
      if (names.empty() || std::find(names.begin(), names.end(), c.name) != names.end())
        checks.push_back({scenario + "/" + c.name, c.pass, c.detail});
  }
  void add(std::string name, bool pass, std::string detail) {
    checks.push_back({std::move(name), pass, std::move(detail)});
  }

  void finish(CriterionResult &r) const {
    r.pass = !checks.empty();
    std::string failed, all;
    for (const auto &c : checks) {
      r.pass = r.pass && c.pass;
      if (!c.pass)
        failed += (failed.empty() ? "" : "; ") + c.name + ": " + c.detail;
      all += (all.empty() ? "" : "; ") + c.detail;
    }
    r.detail = r.pass ? all : "FAILED " + failed;
  }
};

cli::ScenarioOutput exec(const std::string &name, ParamMap params, unsigned jobs,
                         std::uint64_t seed = 1) {
  return cli::execute(name, params, seed, jobs);
}

std::string read_file(const fs::path &p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

// Bytes of every output except the manifest, which records wall-clock time.
std::map<std::string, std::string> outputs(const fs::path &dir) {
  std::map<std::string, std::string> files;
  for (const auto &e : fs::directory_iterator(dir))
    if (e.path().filename() != "manifest.json")
      files[e.path().filename().string()] = read_file(e.path());
  return files;
}

void infrastructure(Tally &tally, unsigned jobs) {
  std::random_device rd;
  const fs::path root = fs::temp_directory_path() / ("adiabat-selfcheck-" + std::to_string(rd()));
  struct Cleanup {
    fs::path p;
    ~Cleanup() {
      std::error_code ec;
      fs::remove_all(p, ec);
    }
  } cleanup{root};

  const std::vector<cli::ScenarioConfig> configs = {
      {"scatter-bounce", {{"trials", 200000.0}}, 7, {}},
      {"berry-latitude", {}, 0, {}},
      {"ab-electric", {{"trials", 200.0}}, 11, {}},
  };
  int k = 0;
  for (auto cfg : configs) {
    cfg.out = root / ("a" + std::to_string(k));
    const auto first = cli::run(cfg, jobs);
    cfg.out = root / ("b" + std::to_string(k));
    const auto second = cli::run(cfg, std::max(1u, jobs) + 2);
    // Re-run from the echoed, fully resolved config.
    auto echo = cli::parse_config(first.manifest["config"]);
    echo.out = root / ("c" + std::to_string(k));
    const auto third = cli::run(echo, jobs);
    ++k;
    const auto a = outputs(root / ("a" + std::to_string(k - 1)));
    const auto b = outputs(root / ("b" + std::to_string(k - 1)));
    const auto c = outputs(root / ("c" + std::to_string(k - 1)));
    tally.add("determinism/" + cfg.scenario,
              first.exit_code == 0 && second.exit_code == 0 && a == b && !a.empty(),
              cfg.scenario + " reruns byte-identical (" + std::to_string(a.size()) + " files)");
    tally.add("round_trip/" + cfg.scenario, third.exit_code == 0 && a == c,
              cfg.scenario + " echoed config reproduces outputs");
  }

  // Norm of a long two-level evolution; StateVector itself rejects drift > 1e-12.
  const auto psi = qcore::evolve(berry::equatorial_schedule(1.0, 0.005),
                                 berry::spin_ground_state(qcore::Vec3(1.0, 0.0, 0.0)), 0.05);
  const double norm_drift = std::abs(psi.amplitudes().norm() - 1.0);
  tally.add("norm_conservation", norm_drift <= 1e-12, "two-level norm drift " + sci(norm_drift));

  analogs::CelestialConfig kepler;
  kepler.M_j = 0.0;
  const auto inv = analogs::celestial_kepler_invariants(kepler, 100.0);
  tally.add("kepler_invariants", inv.energy_drift <= 1e-10 && inv.angular_momentum_drift <= 1e-10,
            "energy " + sci(inv.energy_drift) + ", angular momentum " +
                sci(inv.angular_momentum_drift));
  const double pend = analogs::pendulum_energy_drift(1.0, 1.1, 1.0, 0.02, 1e4);
  tally.add("pendulum_energy", pend <= 1e-6, "frozen pendulum drift " + sci(pend));

  const auto wp = exec("scatter-wavepacket", {{"points", 2048.0}, {"L", 600.0}, {"X", 20.0}, {"x0", 60.0},
                                               {"sigma", 6.0}, {"duration", 200.0}},
                       jobs);
  const double wp_drift = wp.results["max_norm_drift"].get<double>();
  tally.add("wavepacket_norm", wp_drift <= 1e-6, "Crank-Nicolson norm drift " + sci(wp_drift));

  const auto t0 = std::chrono::steady_clock::now();
  const auto fast = run_criteria(fast_subset(), true, jobs);
  const double took = seconds_since(t0);
  bool fast_pass = true;
  for (const auto &r : fast)
    fast_pass = fast_pass && r.pass;
  tally.add("check_subset", fast_pass && took < 60.0,
            "check subset " + std::string(fast_pass ? "passes" : "fails") + " in " +
                sci(took) + " s");
}

void evaluate(int id, bool fast, unsigned jobs, Tally &t) {
  switch (id) {
  case 1:
    t.add(exec("berry-equator", {}, jobs), "berry-equator", {"geometric_phase_pi", "wilson_phase_pi"});
    break;
  case 2:
    t.add(exec("berry-latitude", {}, jobs), "berry-latitude");
    t.add(exec("berry-wilson-sweep", {}, jobs), "berry-wilson-sweep");
    break;
  case 3:
    t.add(exec("berry-equator", {}, jobs), "berry-equator",
          {"strength_independence_wilson", "strength_independence_dynamics"});
    break;
  case 4:
    t.add(exec("berry-equator", {}, jobs), "berry-equator",
          {"frame_sigma3_exact", "frame_sigma3_numeric", "frame_phase_pi"});
    break;
  case 5:
    t.add(exec("topo-phase", {}, jobs), "topo-phase");
    t.add(exec("linking", {}, jobs), "linking");
    break;
  case 6:
    t.add(exec("scatter-phase", {{"Y_samples", 20.0}}, jobs), "scatter-phase",
          {"no_barrier_phase_pi", "extra_phase_2pX", "closed_form"});
    break;
  case 7: {
    t.add(exec("scatter-bounce", {{"trials", fast ? 200000.0 : 1000000.0}}, jobs), "scatter-bounce");
    if (!fast) {
      const auto t0 = std::chrono::steady_clock::now();
      t.add(exec("scatter-wavepacket", {}, jobs), "scatter-wavepacket");
      const double took = seconds_since(t0);
      t.add("scatter-wavepacket/runtime", took <= 300.0, "8192 points in " + sci(took) + " s");
    }
    break;
  }
  case 8:
    t.add(exec("ab-electric", {{"trials", 1000.0}}, jobs), "ab-electric");
    break;
  case 9:
    t.add(exec("pendulum-msw", {}, jobs), "pendulum-msw");
    t.add(exec("two-level-sweep", {}, jobs), "two-level-sweep");
    break;
  case 10:
    t.add(exec("rect-loop", {}, jobs), "rect-loop");
    break;
  case 11:
    t.add(exec("celestial-frozen", {{"phi_points", 1.0}}, jobs), "celestial-frozen");
    t.add(exec("celestial-residual", {}, jobs), "celestial-residual");
    break;
  case 12:
    infrastructure(t, jobs);
    break;
  default:
    t.add("criterion", false, "no criterion " + std::to_string(id));
  }
}

} // namespace

std::vector<int> fast_subset() { return {1, 5, 6, 7, 8, 10}; }

CriterionResult run_criterion(int id, bool fast, unsigned jobs) {
  CriterionResult r;
  r.id = id;
  r.title = (id >= 1 && id <= kCriterionCount) ? kTitles[id - 1] : "unknown";
  const auto t0 = std::chrono::steady_clock::now();
  Tally tally;
  try {
    evaluate(id, fast, jobs, tally);
    tally.finish(r);
  } catch (const std::exception &e) {
    r.pass = false;
    r.detail = std::string("error: ") + e.what();
  }
  r.seconds = seconds_since(t0);
  return r;
}

std::vector<CriterionResult> run_criteria(const std::vector<int> &ids, bool fast, unsigned jobs) {
  std::vector<CriterionResult> out;
  for (int id : ids)
    out.push_back(run_criterion(id, fast, jobs));
  return out;
}

std::string format_line(const CriterionResult &r) {
  char head[160];
  std::snprintf(head, sizeof head, "%s [%2d] %s (%.2f s): ", r.pass ? "PASS" : "FAIL", r.id,
                r.title.c_str(), r.seconds);
  return head + r.detail;
}

} // namespace adiabat::selfcheck
