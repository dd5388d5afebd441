#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <string>

#include "eerd/cli.hpp"
#include "eerd/config.hpp"
#include "eerd/serialize.hpp"
#include "eerd/svg.hpp"
#include "eerd/toml.hpp"

using namespace eerd;

namespace {

const char* kMinimal = R"(
[model]
sigma = "log"

[domain]
L = 1.0
N = 32
E0 = 1.0

[bounds]
c_theta = 0.5
C_u = 2.0
)";

std::string temp_dir(const char* tag) {
  auto dir = std::filesystem::temp_directory_path() / (std::string("eerd_test_") + tag);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir.string();
}

}  // namespace

TEST_CASE("toml subset parser") {
  const auto doc = toml::parse_string(R"(
# comment
[alpha]
x = 1.5        # trailing comment
name = "hello # not a comment"
flag = true
arr = [1.0, 2.5, -3]
)");
  const auto& t = doc.sections.at("alpha");
  CHECK(t.at("x").as_number() == 1.5);
  CHECK(t.at("name").as_string() == "hello # not a comment");
  CHECK(t.at("flag").as_bool());
  CHECK(t.at("arr").as_array() == std::vector<double>{1.0, 2.5, -3.0});

  CHECK_THROWS_AS(toml::parse_string("x = 1\n"), toml::ParseError);
  CHECK_THROWS_AS(toml::parse_string("[s]\nx 1\n"), toml::ParseError);
  CHECK_THROWS_AS(toml::parse_string("[s]\nx = zz\n"), toml::ParseError);
  CHECK_THROWS_AS(toml::parse_string("[s]\nx = 1\nx = 2\n"), toml::ParseError);
  try {
    toml::parse_string("[s]\nok = 1\nbad = \n");
    CHECK(false);
  } catch (const toml::ParseError& e) {
    CHECK(e.line == 3);
  }
}

TEST_CASE("minimal config receives documented defaults") {
  const RunConfig cfg = parse_config_string(kMinimal, "minimal");
  CHECK(cfg.N == 32);
  CHECK(cfg.E0 == 1.0);
  CHECK(cfg.simulation.cfl == 0.2);
  CHECK(cfg.simulation.sample_every == 100);
  CHECK(cfg.initial == "random");
  CHECK(cfg.verify_states == 1000);
  CHECK(cfg.verify_margin == 1.1);
  CHECK(cfg.out_dir == "out");
  CHECK(cfg.write_csv);
  CHECK(cfg.write_svg);
  CHECK_FALSE(cfg.defaults_applied.empty());

  const Grid g = make_grid(cfg);
  CHECK(g.cells() == 32);
  CHECK(g.eps_min() == 1.0);
}

TEST_CASE("config validation failures") {
  // Hypothesis violation surfaces at parse time.
  CHECK_THROWS_WITH_AS(
      parse_config_string("[model]\nbeta = 0.5\n[domain]\nL = 1.0\nN = 16\nE0 = "
                          "1.0\n[bounds]\nc_theta = 0.5\nC_u = 2.0\n",
                          "bad"),
      doctest::Contains("hypothesis violation"), ConfigError);

  // Missing [domain].
  CHECK_THROWS_WITH_AS(
      parse_config_string("[model]\nsigma = \"log\"\n[bounds]\nc_theta = 0.5\nC_u "
                          "= 2.0\n",
                          "bad"),
      doctest::Contains("[domain]"), ConfigError);

  // Unknown key and unknown section.
  CHECK_THROWS_WITH_AS(parse_config_string(std::string(kMinimal) + "wavelength = 3\n",
                                           "bad"),
                       doctest::Contains("unknown key"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config_string(std::string(kMinimal) + "[extra]\nx = 1\n",
                                           "bad"),
                       doctest::Contains("unknown section"), ConfigError);

  // eps length mismatch.
  CHECK_THROWS_WITH_AS(
      parse_config_string("[model]\nsigma = \"log\"\n[domain]\nL = 1.0\nN = 16\nE0 = "
                          "1.0\neps = [1.0, 2.0]\n[bounds]\nc_theta = 0.5\nC_u = 2.0\n",
                          "bad"),
      doctest::Contains("length"), ConfigError);

  // alpha is a power-family key.
  CHECK_THROWS_WITH_AS(
      parse_config_string("[model]\nsigma = \"log\"\nalpha = 0.5\n[domain]\nL = "
                          "1.0\nN = 16\nE0 = 1.0\n[bounds]\nc_theta = 0.5\nC_u = 2.0\n",
                          "bad"),
      doctest::Contains("alpha"), ConfigError);

  // Equilibrium energy must fit under the ceiling.
  CHECK_THROWS_WITH_AS(
      parse_config_string("[model]\nsigma = \"log\"\n[domain]\nL = 1.0\nN = 16\nE0 = "
                          "5.0\n[bounds]\nc_theta = 0.5\nC_u = 2.0\n",
                          "bad"),
      doctest::Contains("C_u"), ConfigError);
}

TEST_CASE("state CSV round trip") {
  const RunConfig cfg = parse_config_string(kMinimal, "minimal");
  const Grid g = make_grid(cfg);
  const std::string dir = temp_dir("csv");
  std::string csv = "x,n,p,u\n";
  for (int i = 0; i < g.cells(); ++i) {
    char row[128];
    std::snprintf(row, sizeof row, "%.17g,%.17g,%.17g,%.17g\n", g.cell_center(i), 1.0,
                  1.0, 0.5 + 0.01 * i);
    csv += row;
  }
  write_text_file(dir + "/state.csv", csv);
  const State s = read_state_csv(dir + "/state.csv", g);
  CHECK(s.n.size() == static_cast<size_t>(g.cells()));
  CHECK(s.u[5] == doctest::Approx(0.55));
  CHECK_THROWS_AS(read_state_csv(dir + "/missing.csv", g), ConfigError);
}

TEST_CASE("trajectory CSV writer round trips and is byte-stable") {
  Trajectory traj;
  traj.samples.push_back({0.0, 1.0, 2.0, 0.0, 0.5, 0.75, 0.1, 0.2, 0.3, 0.01, 0.0});
  traj.samples.push_back(
      {0.125, 1.25, 2.0, 1e-15, 0.25, 0.375, 0.05, 0.1, 0.15, 0.005, 1e-4});
  traj.H0 = 0.5;
  const std::string a = trajectory_csv(traj);
  const std::string b = trajectory_csv(traj);
  CHECK(a == b);
  CHECK(a.rfind("t,S,E,Q,H,P,l1_n,l1_p,l1_u,h1_psi,dt\n", 0) == 0);
  const Trajectory back = trajectory_from_csv(a);
  REQUIRE(back.samples.size() == 2);
  CHECK(back.samples[1].t == 0.125);
  CHECK(back.samples[1].Q == 1e-15);
  CHECK(back.samples[1].dt == 1e-4);
}

TEST_CASE("subcommands write their artifacts and exit cleanly") {
  const std::string dir = temp_dir("cli");
  std::string text = kMinimal;
  text += "\n[simulation]\nt_end = 0.02\nsample_every = 10\nseed = 3\n";
  text += "\n[verify]\nstates = 5\nseed = 2\n";
  const RunConfig cfg = parse_config_string(text, "cli-test");

  CliOverrides ov;
  ov.out_dir = dir;
  CHECK(run_subcommand("check-model", cfg, ov) == 0);
  CHECK(run_subcommand("equilibrium", cfg, ov) == 0);
  CHECK(run_subcommand("constants", cfg, ov) == 0);
  CHECK(run_subcommand("simulate", cfg, ov) == 0);
  CHECK(run_subcommand("verify-eep", cfg, ov) == 0);
  CHECK(run_subcommand("plot", cfg, ov) == 0);
  CHECK(run_subcommand("report", cfg, ov) == 0);
  CHECK(run_subcommand("nonsense", cfg, ov) == 2);

  for (const char* name :
       {"model_check.json", "equilibrium.json", "constants.json", "trajectory.csv",
        "summary.json", "eep_report.json", "h_decay.svg", "conservation.svg",
        "report.json"})
    CHECK(std::filesystem::exists(std::filesystem::path(dir) / name));

  // Identical config + seed give byte-identical artifacts.
  const std::string csv_first = read_text_file(dir + "/trajectory.csv");
  const std::string eep_first = read_text_file(dir + "/eep_report.json");
  CHECK(run_subcommand("simulate", cfg, ov) == 0);
  CHECK(run_subcommand("verify-eep", cfg, ov) == 0);
  CHECK(read_text_file(dir + "/trajectory.csv") == csv_first);
  CHECK(read_text_file(dir + "/eep_report.json") == eep_first);

  const std::string report = read_text_file(dir + "/report.json");
  CHECK(report.find("\"all_pass\": true") != std::string::npos);
}

TEST_CASE("simulate from the equilibrium flags an undefined fitted rate") {
  const std::string dir = temp_dir("flat");
  std::string text = kMinimal;
  text += "\n[simulation]\nt_end = 0.01\nsample_every = 10\ninitial = \"equilibrium\"\n";
  const RunConfig cfg = parse_config_string(text, "flat-test");
  CliOverrides ov;
  ov.out_dir = dir;
  CHECK(run_subcommand("simulate", cfg, ov) == 0);
  const std::string summary = read_text_file(dir + "/summary.json");
  CHECK(summary.find("\"fitted_rate\": null") != std::string::npos);
  CHECK(summary.find("fitted_rate_note") != std::string::npos);
  CHECK(summary.find("\"envelope_satisfied\": true") != std::string::npos);
}

TEST_CASE("config JSON records resolved values") {
  const RunConfig cfg = parse_config_string(kMinimal, "minimal");
  const std::string json = config_json(cfg);
  CHECK(json.find("\"sigma\": \"log\"") != std::string::npos);
  CHECK(json.find("\"defaults_applied\"") != std::string::npos);
  CHECK(config_json(cfg) == json);
}
