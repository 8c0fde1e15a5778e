#include <chrono>
#include <fstream>

#include "adiabat/cli.hpp"

#ifndef ADIABAT_VERSION
#define ADIABAT_VERSION "dev"
#endif

namespace adiabat::cli {

namespace {

Json param_json(const Param &p) {
  if (const auto *d = std::get_if<double>(&p))
    return *d;
  return std::get<std::string>(p);
}

std::string one_line(std::string s) {
  for (char &c : s)
    if (c == '\n' || c == '\r')
      c = ' ';
  return s;
}

} // namespace

const ScenarioSpec &find_scenario(const std::string &name) {
  for (const auto &s : scenarios())
    if (s.name == name)
      return s;
  throw ConfigError("unknown scenario '" + name + "'");
}

ScenarioConfig parse_config(const Json &doc) {
  if (!doc.is_object())
    throw ConfigError("config must be a JSON object");
  ScenarioConfig cfg;
  for (const auto &[key, value] : doc.items()) {
    if (key == "scenario") {
      if (!value.is_string())
        throw ConfigError("'scenario' must be a string");
      cfg.scenario = value.get<std::string>();
    } else if (key == "seed") {
      if (!value.is_number_unsigned())
        throw ConfigError("'seed' must be an unsigned integer");
      cfg.seed = value.get<std::uint64_t>();
    } else if (key == "out") {
      if (!value.is_string())
        throw ConfigError("'out' must be a string");
      cfg.out = value.get<std::string>();
    } else if (key == "parameters") {
      if (!value.is_object())
        throw ConfigError("'parameters' must be an object");
      for (const auto &[k, v] : value.items()) {
        if (v.is_number())
          cfg.params[k] = v.get<double>();
        else if (v.is_string())
          cfg.params[k] = v.get<std::string>();
        else
          throw ConfigError("parameter '" + k + "' must be a number or a string");
      }
    } else {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }
  if (cfg.scenario.empty())
    throw ConfigError("config has no 'scenario'");
  return cfg;
}

ScenarioConfig load_config(const std::filesystem::path &path) {
  std::ifstream f(path);
  if (!f)
    throw ConfigError("cannot read config " + path.string());
  Json doc;
  try {
    doc = Json::parse(f);
  } catch (const Json::parse_error &e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  return parse_config(doc);
}

ParamMap resolve(const ScenarioSpec &spec, const ParamMap &given) {
  ParamMap out;
  for (const auto &p : spec.params)
    out[p.key] = p.default_value;
  for (const auto &[key, value] : given) {
    auto it = out.find(key);
    if (it == out.end())
      throw ConfigError("unknown parameter '" + key + "' for scenario " + spec.name);
    if (it->second.index() != value.index())
      throw ConfigError("parameter '" + key + "' must be a " +
                        (it->second.index() == 0 ? "number" : "string"));
    it->second = value;
  }
  return out;
}

Json config_json(const std::string &scenario, const ParamMap &params, std::uint64_t seed) {
  Json j;
  j["scenario"] = scenario;
  j["seed"] = seed;
  j["parameters"] = Json::object();
  for (const auto &[k, v] : params)
    j["parameters"][k] = param_json(v);
  return j;
}

RunResult run(const ScenarioConfig &config, unsigned jobs) {
  const auto start = std::chrono::steady_clock::now();
  RunResult res;
  Json &m = res.manifest;
  m["artifact_version"] = ADIABAT_VERSION;
  m["config"] = config_json(config.scenario, config.params, config.seed);
  m["status"] = "pending";
  m["error"] = nullptr;
  m["checks"] = Json::array();
  m["outputs"] = Json::array();

  std::error_code ec;
  std::filesystem::create_directories(config.out, ec);
  auto finish = [&](int code, const std::string &status, const std::string &kind,
                    const std::string &message) {
    res.exit_code = code;
    m["status"] = status;
    if (!kind.empty()) {
      m["error"] = {{"kind", kind}, {"message", message}};
      res.reason = "error=" + kind + " message=" + one_line(message);
    }
    m["wall_clock_seconds"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!ec)
      write_file(config.out / "manifest.json", m.dump(2) + "\n");
  };
  if (ec) {
    finish(2, "config-error", "config", "cannot create output directory " + config.out.string());
    return res;
  }

  ParamMap params;
  try {
    params = resolve(find_scenario(config.scenario), config.params);
  } catch (const ConfigError &e) {
    finish(2, "config-error", "config", e.what());
    return res;
  }
  m["config"] = config_json(config.scenario, params, config.seed);

  ScenarioOutput out;
  try {
    out = execute(config.scenario, params, config.seed, jobs);
  } catch (const ConfigError &e) {
    finish(2, "config-error", "config", e.what());
    return res;
  } catch (const ArgumentError &e) {
    finish(2, "config-error", "argument", e.what());
    return res;
  } catch (const Error &e) {
    finish(3, "computation-error", e.kind(), e.what());
    return res;
  } catch (const std::exception &e) {
    finish(3, "computation-error", "internal", e.what());
    return res;
  }

  bool all = true;
  Json checks = Json::array();
  for (const auto &c : out.checks) {
    checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    all = all && c.pass;
  }
  m["checks"] = checks;

  auto emit = [&](const std::string &file, const std::string &bytes) {
    write_file(config.out / file, bytes);
    m["outputs"].push_back({{"file", file}, {"bytes", bytes.size()}, {"sha256", sha256_hex(bytes)}});
  };
  Json summary;
  summary["scenario"] = config.scenario;
  summary["seed"] = config.seed;
  summary["parameters"] = m["config"]["parameters"];
  summary["results"] = out.results;
  summary["checks"] = checks;
  summary["pass"] = all;
  try {
    emit("summary.json", summary.dump(2) + "\n");
    for (const auto &t : out.tables)
      emit(t.name + ".csv", csv_text(t));
  } catch (const std::exception &e) {
    finish(3, "computation-error", "io", e.what());
    return res;
  }

  if (all) {
    finish(0, "pass", "", "");
  } else {
    std::string failed;
    for (const auto &c : out.checks)
      if (!c.pass)
        failed += (failed.empty() ? "" : ";") + c.name;
    finish(1, "fail", "assertion", "failed checks: " + failed);
  }
  return res;
}

} // namespace adiabat::cli
