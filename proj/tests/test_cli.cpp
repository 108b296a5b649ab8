#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "polygen/analysis.hpp"
#include "polygen/cli.hpp"
#include "polygen/emit.hpp"

using namespace polygen;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct CliResult {
  int code = -1;
  std::string out;
  std::string err;
};

CliResult run(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

/// Fresh empty directory under the system temp root, unique per tag.
fs::path fresh_dir(const std::string& tag) {
  const fs::path dir = fs::temp_directory_path() / ("polygen_test_" + tag);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

json read_json(const fs::path& path) { return json::parse(read_file(path)); }

std::size_t data_rows(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  std::size_t rows = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      header_seen = true;
      continue;
    }
    ++rows;
  }
  return rows;
}

std::vector<std::string> split_csv_row(const std::string& line) {
  std::vector<std::string> cells;
  std::istringstream in(line);
  std::string cell;
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  return cells;
}

}  // namespace

TEST_CASE("simulate reports the exact period of the rotation preset") {
  const fs::path dir = fresh_dir("sim_1a");
  const CliResult result =
      run({"simulate", "--preset", "1a", "--out", dir.string()});
  CHECK(result.code == 0);
  CHECK(result.out.find("verdict: exact-periodic") != std::string::npos);
  CHECK(result.out.find("period: 15") != std::string::npos);

  const json report = read_json(dir / "report.json");
  CHECK(report["schema"] == 1);
  CHECK(report["command"] == "simulate");
  CHECK(report["period"]["verdict"] == "exact-periodic");
  CHECK(report["period"]["period"] == 15);
  CHECK(report["taxonomy"]["label"] == "isochronous");
  CHECK(report["taxonomy"]["period"] == 15);
  CHECK(fs::exists(dir / "trajectory.csv"));
  CHECK(data_rows(read_file(dir / "trajectory.csv")) == 46);
}

TEST_CASE("simulate accepts a config file with an identity seed") {
  const fs::path dir = fresh_dir("sim_identity");
  const fs::path config = dir / "config.json";
  write_file(config, R"({
    "schema": 1,
    "seed": {"kind": "affine", "a": [1, 1], "b": [0, 0]},
    "initial": [[[-1, -1], [1, 0]]],
    "steps": 60,
    "max_period": 20
  })");
  const CliResult result =
      run({"simulate", "--config", config.string(), "--out", dir.string()});
  CHECK(result.code == 0);
  const json report = read_json(dir / "report.json");
  CHECK(report["period"]["verdict"] == "exact-periodic");
  CHECK(report["period"]["period"] == 1);
  CHECK(report["taxonomy"]["label"] == "isochronous");
}

TEST_CASE("simulate reports the asymptotic period of the damped lift") {
  const fs::path dir = fresh_dir("sim_2b");
  const CliResult result =
      run({"simulate", "--preset", "2b", "--out", dir.string()});
  CHECK(result.code == 0);
  const json report = read_json(dir / "report.json");
  CHECK(report["period"]["verdict"] == "asymptotically-periodic");
  CHECK(report["period"]["period"] == 7);
  CHECK(report["period"].contains("onset"));
}

TEST_CASE("verify passes on a consistent run") {
  const fs::path dir = fresh_dir("verify_pass");
  const CliResult result =
      run({"verify", "--preset", "1a", "--out", dir.string()});
  CHECK(result.code == 0);
  CHECK(result.out.find("PASS") != std::string::npos);

  const json report = read_json(dir / "verify.json");
  CHECK(report["pass"] == true);
  REQUIRE(report["checks"].size() == 3);
  std::vector<std::string> names;
  for (const auto& check : report["checks"]) {
    CHECK(check["pass"] == true);
    names.push_back(check["name"].get<std::string>());
  }
  CHECK(std::count(names.begin(), names.end(), "mode_equivalence") == 1);
  CHECK(std::count(names.begin(), names.end(), "key_identity") == 1);
  CHECK(std::count(names.begin(), names.end(), "vieta_round_trip") == 1);
}

TEST_CASE("verify fails under a deliberate perturbation") {
  const fs::path dir = fresh_dir("verify_fail");
  const CliResult result = run(
      {"verify", "--preset", "1a", "--perturb", "1e-6", "--out", dir.string()});
  CHECK(result.code == 1);
  CHECK(result.out.find("FAIL") != std::string::npos);
  const json report = read_json(dir / "verify.json");
  CHECK(report["pass"] == false);
}

TEST_CASE("reproduce emits the figure bundle deterministically") {
  const fs::path first = fresh_dir("repro_1a_first");
  const fs::path second = fresh_dir("repro_1a_second");
  CHECK(run({"reproduce", "1a", "--out", first.string()}).code == 0);
  CHECK(run({"reproduce", "1a", "--out", second.string()}).code == 0);

  const std::vector<std::string> names = {
      "1a_trajectory.csv", "1a_re.csv", "1a_im.csv", "1a_reim.svg",
      "1a_plane.svg"};
  for (const std::string& name : names) {
    REQUIRE(fs::exists(first / name));
    CHECK(read_file(first / name) == read_file(second / name));
  }
  CHECK(data_rows(read_file(first / "1a_trajectory.csv")) == 16);
}

TEST_CASE("reproduce covers the slow-rotation horizon") {
  const fs::path dir = fresh_dir("repro_1c");
  CHECK(run({"reproduce", "1c", "--out", dir.string()}).code == 0);
  REQUIRE(fs::exists(dir / "1c_trajectory.csv"));
  CHECK(fs::exists(dir / "1c_re.csv"));
  CHECK(fs::exists(dir / "1c_im.csv"));
  CHECK(fs::exists(dir / "1c_reim.svg"));
  CHECK(data_rows(read_file(dir / "1c_trajectory.csv")) == 26);
}

TEST_CASE("unknown preset names are config errors") {
  const fs::path dir = fresh_dir("bad_preset");
  const CliResult result =
      run({"simulate", "--preset", "9z", "--out", dir.string()});
  CHECK(result.code == 2);
  CHECK_FALSE(result.err.empty());
}

TEST_CASE("sweep agrees with the detector on a small grid") {
  const fs::path dir = fresh_dir("sweep_small");
  const fs::path config = dir / "sweep.json";
  write_file(config, R"({
    "schema": 1,
    "sweep": {
      "axes": [[{"rotation": [1, 3]}, 0.5], [0.9, 1.1]],
      "b": [1, 2],
      "initial": [[-1, -1], [1, 0]],
      "steps": 600,
      "max_period": 15
    }
  })");
  const CliResult result =
      run({"sweep", "--config", config.string(), "--out", dir.string()});
  CHECK(result.code == 0);
  CHECK(result.out.find("4 cells: 4 agree, 0 disagree, 0 skipped") !=
        std::string::npos);

  const std::string csv = read_file(dir / "sweep.csv");
  REQUIRE(data_rows(csv) == 4);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  const std::vector<std::string> header = split_csv_row(line);
  std::size_t agree_col = 0;
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == "agree") agree_col = i;
  REQUIRE(agree_col > 0);
  while (std::getline(in, line)) {
    const std::vector<std::string> cells = split_csv_row(line);
    REQUIRE(cells.size() > agree_col);
    CHECK(cells[agree_col] == "true");
  }
}

TEST_CASE("detect-period consumes an emitted trajectory") {
  const fs::path dir = fresh_dir("detect_roundtrip");
  REQUIRE(run({"simulate", "--preset", "1a", "--out", dir.string()}).code == 0);
  const CliResult result = run({"detect-period",
                                (dir / "trajectory.csv").string(),
                                "--max-period", "15"});
  CHECK(result.code == 0);
  const json report = json::parse(result.out);
  CHECK(report["period"]["verdict"] == "exact-periodic");
  CHECK(report["period"]["period"] == 15);
}

TEST_CASE("vanishing coefficients surface as a numerical failure") {
  const fs::path dir = fresh_dir("numerical_failure");
  const fs::path config = dir / "config.json";
  write_file(config, R"({
    "schema": 1,
    "seed": {"kind": "second_order", "a": [[0, 1], [-1, 0]], "b": [1, 1]},
    "initial": [[[1, 0], [0, 1]], [[0, 0], [0, 0]]],
    "steps": 40,
    "max_period": 10,
    "mode": "iterated"
  })");
  const CliResult result =
      run({"simulate", "--config", config.string(), "--out", dir.string()});
  CHECK(result.code == 3);
  CHECK(result.err.find("numerical failure") != std::string::npos);
}

TEST_CASE("argument errors exit with the config code") {
  const fs::path dir = fresh_dir("arg_errors");
  CHECK(run({"simulate", "--nope"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"sweep", "--out", dir.string()}).code == 2);

  const fs::path config = dir / "config.json";
  write_file(config, R"({
    "schema": 1,
    "seed": {"kind": "affine", "a": [1, 1], "b": [0, 0]},
    "initial": [[[-1, -1], [1, 0]]]
  })");
  CHECK(run({"simulate", "--preset", "1a", "--config", config.string(),
             "--out", dir.string()})
            .code == 2);
  CHECK(run({"simulate", "--config", (dir / "missing.json").string(),
             "--out", dir.string()})
            .code == 2);
}

TEST_CASE("format selects the artifact set") {
  const fs::path json_dir = fresh_dir("format_json");
  CHECK(run({"simulate", "--preset", "1a", "--format", "json", "--out",
             json_dir.string()})
            .code == 0);
  CHECK(fs::exists(json_dir / "report.json"));
  CHECK_FALSE(fs::exists(json_dir / "trajectory.csv"));

  const fs::path svg_dir = fresh_dir("format_svg");
  CHECK(run({"simulate", "--preset", "1a", "--format", "svg", "--out",
             svg_dir.string()})
            .code == 0);
  CHECK(fs::exists(svg_dir / "report.json"));
  CHECK(fs::exists(svg_dir / "trajectory.csv"));
  REQUIRE(fs::exists(svg_dir / "series.svg"));
  REQUIRE(fs::exists(svg_dir / "plane.svg"));
  CHECK(read_file(svg_dir / "series.svg").find("<svg") != std::string::npos);
  CHECK(read_file(svg_dir / "plane.svg").find("<svg") != std::string::npos);
}

TEST_CASE("emitted trajectories round-trip through the parser") {
  const fs::path dir = fresh_dir("csv_roundtrip");
  REQUIRE(run({"simulate", "--preset", "1b", "--out", dir.string()}).code == 0);
  const Trajectory parsed =
      parse_trajectory_csv(read_file(dir / "trajectory.csv"));
  const PeriodReport report = detect_period(parsed, 20);
  CHECK(report.verdict == Verdict::asymptotically_periodic);
  CHECK(report.period == 7);
}

TEST_CASE("geometric time stamps reach the emitted series") {
  const fs::path dir = fresh_dir("q_affine_stamps");
  const fs::path config = dir / "config.json";
  write_file(config, R"({
    "schema": 1,
    "seed": {"kind": "q_affine", "q": 2,
             "a": [{"rotation": [1, 4]}, 0.5], "b": [0, 0]},
    "initial": [[[-1, -1], [1, 0]]],
    "steps": 3,
    "max_period": 1
  })");
  const CliResult result =
      run({"simulate", "--config", config.string(), "--out", dir.string()});
  CHECK(result.code == 0);

  const std::string csv = read_file(dir / "trajectory.csv");
  std::istringstream in(csv);
  std::string line;
  std::vector<double> stamps;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      header_seen = true;
      continue;
    }
    const std::vector<std::string> cells = split_csv_row(line);
    REQUIRE(cells.size() >= 2);
    stamps.push_back(std::strtod(cells[1].c_str(), nullptr));
  }
  REQUIRE(stamps.size() == 4);
  CHECK(stamps[0] == doctest::Approx(1.0));
  CHECK(stamps[1] == doctest::Approx(2.0));
  CHECK(stamps[2] == doctest::Approx(4.0));
  CHECK(stamps[3] == doctest::Approx(8.0));
}

TEST_CASE("help prints usage and exits cleanly") {
  const CliResult result = run({"--help"});
  CHECK(result.code == 0);
  CHECK(result.out.find("Usage") != std::string::npos);
  for (const char* name :
       {"simulate", "verify", "reproduce", "sweep", "detect-period"})
    CHECK(result.out.find(name) != std::string::npos);
}
