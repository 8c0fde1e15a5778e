#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "adiabat/cli.hpp"

using namespace adiabat::cli;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string &name) {
  const fs::path p = fs::temp_directory_path() / ("adiabat-test-" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path &p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

Json read_json(const fs::path &p) { return Json::parse(slurp(p)); }

} // namespace

TEST(List, ExactlyTheImplementedScenarios) {
  const std::set<std::string> want = {
      "berry-equator", "berry-latitude", "berry-wilson-sweep", "linking", "topo-phase",
      "scatter-phase", "scatter-bounce", "scatter-wavepacket", "ab-electric", "pendulum-msw",
      "two-level-sweep", "rect-loop", "celestial-frozen", "celestial-residual", "monopole-angmom"};
  std::set<std::string> got;
  for (const auto &s : scenarios()) {
    got.insert(s.name);
    EXPECT_FALSE(s.description.empty());
    std::set<std::string> keys;
    for (const auto &p : s.params) {
      EXPECT_TRUE(keys.insert(p.key).second) << s.name << " repeats " << p.key;
      EXPECT_FALSE(p.unit.empty());
    }
  }
  EXPECT_EQ(got, want);
}

TEST(Config, UnknownKeyRejectedWithManifestOnly) {
  const auto dir = scratch("unknown");
  ScenarioConfig c{"scatter-bounce", {{"foo", 1.0}}, 0, dir};
  const auto r = run(c, 1);
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_NE(r.reason.find("foo"), std::string::npos);
  std::vector<std::string> files;
  for (const auto &e : fs::directory_iterator(dir))
    files.push_back(e.path().filename().string());
  EXPECT_EQ(files, std::vector<std::string>{"manifest.json"});
  EXPECT_EQ(read_json(dir / "manifest.json")["status"], "config-error");
}

TEST(Config, UnknownScenarioAndBadTypes) {
  EXPECT_EQ(run({"nope", {}, 0, scratch("nope")}, 1).exit_code, 2);
  EXPECT_EQ(run({"scatter-bounce", {{"epsilon", std::string("x")}}, 0, scratch("type")}, 1).exit_code, 2);
  EXPECT_THROW(parse_config(Json::parse(R"({"scenario":"linking","extra":1})")), ConfigError);
  EXPECT_THROW(parse_config(Json::parse(R"({"scenario":"linking","seed":-1})")), ConfigError);
  EXPECT_THROW(parse_config(Json::parse(R"({"parameters":{}})")), ConfigError);
}

TEST(Config, DefaultsEchoed) {
  const auto dir = scratch("echo");
  const auto r = run({"rect-loop", {{"delta0", 12.0}}, 5, dir}, 1);
  ASSERT_EQ(r.exit_code, 0);
  const auto params = r.manifest["config"]["parameters"];
  EXPECT_EQ(params["delta0"], 12.0);
  EXPECT_EQ(params["epsilon0"], 0.5);
  EXPECT_EQ(r.manifest["config"]["seed"], 5);
}

TEST(Run, BounceScenarioNetMomentumZero) {
  const auto dir = scratch("bounce");
  const auto r = run({"scatter-bounce", {{"epsilon", 0.1}, {"trials", 10000.0}}, 1, dir}, 1);
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(read_json(dir / "summary.json")["results"]["net_momentum"].get<double>(), 0.0);
}

TEST(Run, BerryEquatorPasses) {
  const auto dir = scratch("equator");
  EXPECT_EQ(run({"berry-equator", {}, 0, dir}, 1).exit_code, 0);
  const auto s = read_json(dir / "summary.json");
  EXPECT_NEAR(std::abs(s["results"]["wilson_phase"].get<double>()), 3.14159265358979, 1e-3);
}

TEST(Run, AssertionFailureExitsOne) {
  const auto dir = scratch("fail");
  const auto r = run({"two-level-sweep", {{"tolerance", 1e-9}}, 0, dir}, 1);
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_TRUE(fs::exists(dir / "summary.json"));
  EXPECT_EQ(read_json(dir / "manifest.json")["status"], "fail");
}

TEST(Run, ComputationErrorExitsThree) {
  // Packet reaches the far wall.
  const auto dir = scratch("computation");
  const auto r = run({"scatter-wavepacket", {{"L", 300.0}, {"points", 1024.0}, {"x0", 60.0}, {"X", 20.0},
                                             {"sigma", 6.0}, {"duration", 600.0}},
                      0, dir},
                     1);
  EXPECT_EQ(r.exit_code, 3);
  EXPECT_EQ(read_json(dir / "manifest.json")["error"]["kind"], "geometry");
}

TEST(Determinism, ByteIdenticalAcrossRunsAndJobs) {
  const auto a = scratch("det-a"), b = scratch("det-b");
  ParamMap p{{"trials", 50000.0}};
  ASSERT_EQ(run({"scatter-bounce", p, 9, a}, 1).exit_code, 0);
  ASSERT_EQ(run({"scatter-bounce", p, 9, b}, 3).exit_code, 0);
  EXPECT_EQ(slurp(a / "summary.json"), slurp(b / "summary.json"));
  EXPECT_EQ(slurp(a / "partial_sums.csv"), slurp(b / "partial_sums.csv"));
  const auto c = scratch("det-c");
  ASSERT_EQ(run({"scatter-bounce", p, 10, c}, 1).exit_code, 0);
  EXPECT_NE(slurp(a / "summary.json"), slurp(c / "summary.json"));
}

TEST(Manifest, DigestsMatchFiles) {
  const auto dir = scratch("digest");
  const auto r = run({"berry-latitude", {}, 0, dir}, 1);
  ASSERT_EQ(r.exit_code, 0);
  ASSERT_EQ(r.manifest["outputs"].size(), 2u);
  for (const auto &o : r.manifest["outputs"]) {
    const auto bytes = slurp(dir / o["file"].get<std::string>());
    EXPECT_EQ(o["sha256"], sha256_hex(bytes));
    EXPECT_EQ(o["bytes"], bytes.size());
  }
  EXPECT_TRUE(r.manifest.contains("wall_clock_seconds"));
  EXPECT_EQ(r.manifest["artifact_version"], ADIABAT_TEST_VERSION);
}

TEST(Output, Sha256KnownVector) {
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Output, CsvSchemaRoundTrips) {
  const Table t{"x", {"a", "b"}, {"time", "1"}, {{0.1, 1.0 / 3.0}, {1e-300, -2.5}}};
  std::istringstream in(csv_text(t));
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "a,b");
  std::getline(in, line);
  EXPECT_EQ(line, "time,1");
  std::getline(in, line);
  const auto comma = line.find(',');
  EXPECT_EQ(std::stod(line.substr(0, comma)), 0.1);
  EXPECT_EQ(std::stod(line.substr(comma + 1)), 1.0 / 3.0);
}

TEST(Output, EnvironmentRoot) {
  setenv("ADIABAT_OUT", "/tmp/somewhere", 1);
  EXPECT_EQ(default_output_root(), fs::path("/tmp/somewhere"));
  unsetenv("ADIABAT_OUT");
  EXPECT_EQ(default_output_root(), fs::path("adiabat-out"));
}
