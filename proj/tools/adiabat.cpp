// adiabat: run named scenarios, list them, or run the fast acceptance subset.

#include <cstdio>
#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include "adiabat/cli.hpp"
#include "adiabat/selfcheck.hpp"

namespace {

using namespace adiabat;

std::string param_text(const cli::Param &p) {
  if (const auto *d = std::get_if<double>(&p))
    return cli::format_double(*d);
  return "\"" + std::get<std::string>(p) + "\"";
}

void list() {
  for (const auto &s : cli::scenarios()) {
    std::cout << s.name << "\n  " << s.description << "\n";
    for (const auto &p : s.params)
      std::cout << "    " << p.key << " = " << param_text(p.default_value) << " [" << p.unit << "]  "
                << p.help << "\n";
  }
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Adiabatic and geometric phase laboratory"};
  app.require_subcommand(1);
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
  app.add_option("--jobs", jobs, "worker bound")->check(CLI::PositiveNumber);

  auto *run = app.add_subcommand("run", "run one scenario from a JSON config");
  std::string config_path, out_dir;
  std::uint64_t seed = 0;
  run->add_option("--config", config_path, "scenario config (JSON)")->required();
  auto *seed_opt = run->add_option("--seed", seed, "overrides the config seed");
  run->add_option("--out", out_dir, "output directory (default $ADIABAT_OUT/<scenario>)");
  run->add_option("--jobs", jobs, "worker bound")->check(CLI::PositiveNumber);

  app.add_subcommand("list", "list scenarios with parameters, defaults and units");
  auto *check = app.add_subcommand("check", "run the fast acceptance subset");
  check->add_option("--jobs", jobs, "worker bound")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (app.got_subcommand("list")) {
    list();
    return 0;
  }
  if (app.got_subcommand("check")) {
    bool all = true;
    for (const auto &r : selfcheck::run_criteria(selfcheck::fast_subset(), true, jobs)) {
      std::cout << selfcheck::format_line(r) << std::endl;
      all = all && r.pass;
    }
    return all ? 0 : 1;
  }

  cli::ScenarioConfig cfg;
  try {
    cfg = cli::load_config(config_path);
  } catch (const cli::ConfigError &e) {
    std::cerr << "error=config message=" << e.what() << "\n";
    return 2;
  }
  if (*seed_opt)
    cfg.seed = seed;
  if (!out_dir.empty())
    cfg.out = out_dir;
  else if (cfg.out.empty())
    cfg.out = cli::default_output_root() / cfg.scenario;

  const auto res = cli::run(cfg, jobs);
  if (res.exit_code != 0)
    std::cerr << res.reason << "\n";
  else
    std::cout << "pass " << cfg.out.string() << "\n";
  return res.exit_code;
}
