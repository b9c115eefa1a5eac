#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "condkin/config.hpp"
#include "condkin/errors.hpp"

using namespace condkin;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / fs::path("condkin_test_" + std::to_string(counter++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  static int counter;
};
int TempDir::counter = 0;

std::string write_config(const fs::path& dir, const std::string& name, const std::string& body) {
  const fs::path p = dir / name;
  std::ofstream out(p);
  out << body;
  return p.string();
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const char* kEvolveConfig = R"({
  "experiment": "evolve",
  "output_dir": "OUTDIR",
  "physical": {"mass": 1.0, "beta": 1.0},
  "grid": {"dim": 1, "q_max": 2.0, "points_per_axis": 32},
  "dispersion": {"kind": "radiative", "sound_speed": 1.0},
  "sigma_e": 0.05,
  "initial_state": {"kind": "gaussian", "width": 0.3, "truncate_radius": 1.5},
  "evolution": {"dt": 0.05, "t_end": 0.2, "mode": "nonlinear", "record_every": 2}
})";

std::string evolve_config(const std::string& outdir) {
  std::string body = kEvolveConfig;
  body.replace(body.find("OUTDIR"), 6, outdir);
  return body;
}

}  // namespace

TEST_CASE("validate: clean config has no diagnostics") {
  TempDir tmp;
  const auto cfg = write_config(tmp.path, "ok.json", evolve_config("out"));
  CHECK(cli::validate_file(cfg).empty());
}

TEST_CASE("validate: odd grid points are reported against the grid module") {
  TempDir tmp;
  std::string body = evolve_config("out");
  body.replace(body.find("\"points_per_axis\": 32"), 21, "\"points_per_axis\": 31");
  const auto cfg = write_config(tmp.path, "odd.json", body);
  const auto diagnostics = cli::validate_file(cfg);
  REQUIRE(!diagnostics.empty());
  bool found = false;
  for (const auto& d : diagnostics)
    if (d.module == "grid") found = true;
  CHECK(found);
}

TEST_CASE("validate: zero mollifier width is reported") {
  TempDir tmp;
  std::string body = evolve_config("out");
  body.replace(body.find("\"sigma_e\": 0.05"), 15, "\"sigma_e\": 0.0");
  const auto cfg = write_config(tmp.path, "sigma.json", body);
  const auto diagnostics = cli::validate_file(cfg);
  REQUIRE(!diagnostics.empty());
  bool found = false;
  for (const auto& d : diagnostics)
    if (d.message.find("sigma_e") != std::string::npos) found = true;
  CHECK(found);
}

TEST_CASE("validate: unreadable and malformed files throw") {
  TempDir tmp;
  CHECK_THROWS_AS(cli::validate_file((tmp.path / "missing.json").string()),
                  InvalidConfiguration);
  const auto broken = write_config(tmp.path, "broken.json", "{ not json");
  CHECK_THROWS_AS(cli::validate_file(broken), InvalidConfiguration);
  const auto unknown = write_config(tmp.path, "unknown.json",
                                    R"({"experiment": "fly", "output_dir": "o"})");
  const auto diagnostics = cli::validate_file(unknown);
  REQUIRE(diagnostics.size() == 1);
  CHECK(diagnostics[0].message.find("unknown experiment") != std::string::npos);
}

TEST_CASE("run: evolve writes trajectory, snapshots and manifest deterministically") {
  TempDir tmp;
  const auto cfg_a = write_config(tmp.path, "a.json", evolve_config("out_a"));
  const auto cfg_b = write_config(tmp.path, "b.json", evolve_config("out_b"));
  cli::run_file(cfg_a);
  cli::run_file(cfg_b);

  const fs::path out_a = tmp.path / "out_a", out_b = tmp.path / "out_b";
  REQUIRE(fs::exists(out_a / "trajectory.csv"));
  REQUIRE(fs::exists(out_a / "manifest.json"));
  REQUIRE(fs::exists(out_a / "snapshots" / "snapshot_000000.csv"));

  // byte-identical artifacts for identical configs
  CHECK(slurp(out_a / "trajectory.csv") == slurp(out_b / "trajectory.csv"));
  CHECK(slurp(out_a / "snapshots" / "snapshot_000000.csv") ==
        slurp(out_b / "snapshots" / "snapshot_000000.csv"));

  const std::string trajectory = slurp(out_a / "trajectory.csv");
  CHECK(trajectory.rfind("t,total_number,max_residual,min_value", 0) == 0);

  // total number column stays constant through the run
  std::istringstream lines(trajectory);
  std::string line;
  std::getline(lines, line);  // header
  double first = -1.0;
  while (std::getline(lines, line)) {
    const auto a = line.find(','), b = line.find(',', line.find(',') + 1);
    const double total = std::stod(line.substr(a + 1, b - a - 1));
    if (first < 0.0) first = total;
    CHECK(std::abs(total - first) <= 1e-4 * first);
  }
  CHECK(first > 0.0);
}

TEST_CASE("run: condense table ends at the transition with zero condensate") {
  TempDir tmp;
  const auto cfg = write_config(tmp.path, "condense.json", R"({
    "experiment": "condense",
    "output_dir": "cond",
    "physical": {"mass": 1.0, "rho": 1.0},
    "condense": {"temperatures": 8}
  })");
  cli::run_file(cfg);
  const std::string csv = slurp(tmp.path / "cond" / "condense.csv");
  CHECK(csv.rfind("theta,c,normal_density,rho_check", 0) == 0);
  // last row: c = 0 at theta = theta_c
  const auto last_line_start = csv.rfind('\n', csv.size() - 2) + 1;
  const std::string last = csv.substr(last_line_start);
  const auto first_comma = last.find(',');
  const auto second_comma = last.find(',', first_comma + 1);
  CHECK(last.substr(first_comma + 1, second_comma - first_comma - 1) == "0");
}

TEST_CASE("run: landau report carries the critical velocity") {
  TempDir tmp;
  const auto cfg = write_config(tmp.path, "landau.json", R"({
    "experiment": "landau",
    "output_dir": "landau",
    "physical": {"mass": 1.0},
    "dispersion": {"kind": "radiative", "sound_speed": 2.0}
  })");
  cli::run_file(cfg);
  const std::string report = slurp(tmp.path / "landau" / "landau_report.txt");
  CHECK(report.find("v_c = ") != std::string::npos);
  const auto pos = report.find("v_c = ") + 6;
  const double v_c = std::stod(report.substr(pos));
  CHECK(v_c == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("run: superfluid check emits a machine-readable report") {
  TempDir tmp;
  const auto cfg = write_config(tmp.path, "check.json", R"({
    "experiment": "check-superfluid",
    "output_dir": "check",
    "physical": {"mass": 1.0, "beta": 1.0},
    "grid": {"dim": 1, "q_max": 2.0, "points_per_axis": 64},
    "dispersion": {"kind": "radiative", "sound_speed": 1.0},
    "sigma_e": 0.003,
    "initial_state": {"kind": "gaussian", "width": 0.25, "truncate_radius": 0.8}
  })");
  cli::run_file(cfg);
  const std::string report = slurp(tmp.path / "check" / "superfluid_report.json");
  CHECK(report.find("\"superfluid\": true") != std::string::npos);
  CHECK(report.find("\"support_ok\": true") != std::string::npos);
}

TEST_CASE("run: numerical failure surfaces as NumericalFailure") {
  TempDir tmp;
  std::string body = evolve_config("blowup");
  body.replace(body.find("\"dt\": 0.05"), 10, "\"dt\": 50.0");
  body.replace(body.find("\"t_end\": 0.2"), 12, "\"t_end\": 100.0");
  const auto cfg = write_config(tmp.path, "blowup.json", body);
  CHECK_THROWS_AS(cli::run_file(cfg), NumericalFailure);
  // artifacts up to the failure are still on disk
  CHECK(fs::exists(tmp.path / "blowup" / "trajectory.csv"));
}

TEST_CASE("run: three-dimensional evolve with an on-the-fly kernel") {
  TempDir tmp;
  const auto cfg = write_config(tmp.path, "d3.json", R"({
    "experiment": "evolve",
    "output_dir": "d3",
    "physical": {"mass": 1.0, "beta": 1.0},
    "grid": {"dim": 3, "q_max": 1.0, "points_per_axis": 6},
    "dispersion": {"kind": "radiative", "sound_speed": 1.0},
    "sigma_e": 0.1,
    "initial_state": {"kind": "gaussian", "width": 0.4, "truncate_radius": 0.9},
    "evolution": {"dt": 0.05, "t_end": 0.1, "mode": "nonlinear"}
  })");
  cli::run_file(cfg);
  const std::string trajectory = slurp(tmp.path / "d3" / "trajectory.csv");
  CHECK(trajectory.rfind("t,total_number", 0) == 0);
  const std::string snap = slurp(tmp.path / "d3" / "snapshots" / "snapshot_000000.csv");
  CHECK(snap.rfind("q_1,q_2,q_3,n", 0) == 0);
}

TEST_CASE("run: missing keys are configuration errors") {
  TempDir tmp;
  const auto cfg = write_config(tmp.path, "nokey.json",
                                R"({"experiment": "condense", "output_dir": "x"})");
  CHECK_THROWS_AS(cli::run_file(cfg), InvalidConfiguration);
}
