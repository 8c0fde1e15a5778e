#pragma once

// Scenario runner: named experiments with flat JSON configs, per-scenario
// defaults, summary/manifest JSON and CSV tables.

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "adiabat/errors.hpp"

namespace adiabat::cli {

using Json = nlohmann::ordered_json;
using Param = std::variant<double, std::string>;

/// Bad scenario name, unknown key, wrong value type or unreadable config.
class ConfigError : public Error {
public:
  explicit ConfigError(const std::string &what) : Error("config", what) {}
};

struct ParamSpec {
  std::string key;
  Param default_value;
  std::string unit;
  std::string help;
};

struct ScenarioSpec {
  std::string name;
  std::string description;
  std::vector<ParamSpec> params;
};

/// All implemented scenarios, in listing order.
const std::vector<ScenarioSpec> &scenarios();
const ScenarioSpec &find_scenario(const std::string &name);

using ParamMap = std::map<std::string, Param>;

struct ScenarioConfig {
  std::string scenario;
  ParamMap params; // as given; missing keys take defaults
  std::uint64_t seed = 0;
  std::filesystem::path out;
};

/// Parses {"scenario": ..., "seed": ..., "parameters": {...}, "out": ...}.
ScenarioConfig parse_config(const Json &doc);
ScenarioConfig load_config(const std::filesystem::path &path);

/// Fills defaults and rejects unknown keys or mistyped values.
ParamMap resolve(const ScenarioSpec &spec, const ParamMap &given);

/// Config echo in the same schema `parse_config` reads.
Json config_json(const std::string &scenario, const ParamMap &params, std::uint64_t seed);

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// First column is the independent variable.
struct Table {
  std::string name; // file stem
  std::vector<std::string> columns;
  std::vector<std::string> units;
  std::vector<std::vector<double>> rows;
};

struct ScenarioOutput {
  Json results = Json::object();
  std::vector<Check> checks;
  std::vector<Table> tables;
};

/// Runs a scenario on resolved parameters without touching the filesystem.
ScenarioOutput execute(const std::string &scenario, const ParamMap &params, std::uint64_t seed,
                       unsigned jobs);

struct RunResult {
  int exit_code = 0; // 0 pass, 1 assertion failed, 2 config error, 3 computation error
  std::string reason;
  Json manifest;
};

/// Validates, executes and writes summary.json, CSVs and manifest.json into
/// `config.out`. The manifest is written in every case where the directory
/// can be created.
RunResult run(const ScenarioConfig &config, unsigned jobs);

/// Output root: $ADIABAT_OUT if set, else "adiabat-out".
std::filesystem::path default_output_root();

// Output helpers.
std::string format_double(double v); // %.17g, "nan"/"inf" spelled out
std::string csv_text(const Table &table);
std::string sha256_hex(const std::string &bytes);
void write_file(const std::filesystem::path &path, const std::string &bytes);

} // namespace adiabat::cli
