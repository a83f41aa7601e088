#include "doctest.h"
#include "ohmic/io.hpp"
#include "ohmic/run.hpp"
#include "ohmic/wavepacket.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace ohmic;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name)
      : path(fs::temp_directory_path() / ("ohmic_test_" + name)) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::vector<double>> data_rows(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line[0] == 'q' || line[0] == 't') continue;
    std::vector<double> row;
    std::istringstream fields(line);
    std::string field;
    while (std::getline(fields, field, ',')) row.push_back(std::strtod(field.c_str(), nullptr));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

TEST_CASE("scenario names round-trip") {
  for (auto s : {Scenario::fig1, Scenario::fig2, Scenario::fig3, Scenario::fig3_text,
                 Scenario::width, Scenario::evolve, Scenario::interfere, Scenario::validate}) {
    CHECK(parse_scenario(to_string(s)) == s);
  }
  CHECK_THROWS_WITH_AS(parse_scenario("fig9"), doctest::Contains("scenario"), ConfigError);
}

TEST_CASE("scenario defaults") {
  RunConfig c;
  c.scenario = Scenario::fig3;
  const auto r = resolve(c);
  CHECK(*r.r == 16.0);
  CHECK(*r.z == doctest::Approx(5.0 * std::sqrt(0.5)));
  CHECK(*r.sigma == doctest::Approx(std::sqrt(0.5) / 16.0));
  REQUIRE(r.times.size() == 4);
  CHECK(r.times[0] == 0.0);
  CHECK(r.out == "fig3.csv");

  c.scenario = Scenario::fig3_text;
  CHECK(*resolve(c).z == doctest::Approx(3.0 * std::sqrt(0.5)));
  c.scenario = Scenario::fig2;
  CHECK(*resolve(c).r == 1.0);
}

TEST_CASE("configuration errors name the field") {
  RunConfig c;
  c.scenario = Scenario::fig2;
  c.eta = 2.5;
  CHECK_THROWS_WITH_AS(resolve(c), doctest::Contains("system"), ConfigError);
  c.eta = 0.1;
  c.sigma = 0.5;
  c.r = 2.0;
  CHECK_THROWS_WITH_AS(resolve(c), doctest::Contains("sigma, r"), ConfigError);
  c.r.reset();
  c.sigma = -1.0;
  CHECK_THROWS_WITH_AS(resolve(c), doctest::Contains("sigma"), ConfigError);
  c.sigma.reset();
  c.times = {1.0, -2.0};
  CHECK_THROWS_WITH_AS(resolve(c), doctest::Contains("times"), ConfigError);
  c.times.clear();
  c.grid_points = 3;
  CHECK_THROWS_WITH_AS(resolve(c), doctest::Contains("grid_points"), ConfigError);
  c.grid_points = 0;
  c.scenario = Scenario::fig3;
  c.z = 0.0;
  CHECK_THROWS_WITH_AS(resolve(c), doctest::Contains("z"), ConfigError);
}

TEST_CASE("json configuration overrides fields") {
  TempDir dir("json");
  const auto path = dir.path / "config.json";
  std::ofstream(path) << R"({"system": {"eta": 0.2, "omega_cut": 50},
                            "scenario": {"name": "fig3", "r": 4, "times": [0, 1.5],
                                         "sigma_xi_mode": "estimate"}})";
  RunConfig c;
  apply_json_file(c, path.string());
  CHECK(c.eta == 0.2);
  CHECK(c.omega_cut == 50.0);
  CHECK(c.scenario == Scenario::fig3);
  CHECK(*c.r == 4.0);
  CHECK(c.times == std::vector<double>{0.0, 1.5});
  CHECK(c.sigma_xi_mode == WidthMode::estimate);

  std::ofstream(path) << R"({"system": {"eta": "fast"}})";
  CHECK_THROWS_WITH_AS(apply_json_file(c, path.string()), doctest::Contains("system.eta"),
                       ConfigError);
  CHECK_THROWS_AS(apply_json_file(c, (dir.path / "missing.json").string()), ConfigError);
}

TEST_CASE("fig1 width curve ends near the equilibrium width") {
  TempDir dir("fig1");
  RunConfig c;
  c.scenario = Scenario::fig1;
  c.out = (dir.path / "fig1.csv").string();
  std::ostringstream log;
  REQUIRE(run(c, log) == 0);
  const auto text = slurp(c.out);
  CHECK(text.rfind(std::string("# ") + io::kWidthSchema, 0) == 0);
  const auto rows = data_rows(text);
  REQUIRE(rows.size() == 201);
  CHECK(rows.front()[1] == 0.0);
  CHECK(rows.back()[0] == 50.0);
  CHECK(rows.back()[2] >= 0.92);
  CHECK(rows.back()[2] <= 1.00);
}

TEST_CASE("fig2 starts from the initial packet") {
  TempDir dir("fig2");
  RunConfig c;
  c.scenario = Scenario::fig2;
  c.out = (dir.path / "fig2.csv").string();
  std::ostringstream log;
  REQUIRE(run(c, log) == 0);
  const auto text = slurp(c.out);
  const auto first = text.find("# t=0\n");
  REQUIRE(first != std::string::npos);
  const auto second = text.find("# t=", first + 1);
  const auto rows = data_rows(text.substr(first, second - first));
  REQUIRE(rows.size() > 100);
  const auto psi0 = initial_gaussian(5.0 * std::sqrt(0.5), std::sqrt(0.5));
  for (const auto& row : rows) {
    CHECK(row[1] == doctest::Approx(psi0(row[0]).real()).epsilon(1e-14));
    CHECK(std::abs(row[2]) < 1e-15);
  }
}

TEST_CASE("outputs are byte-identical across reruns") {
  TempDir dir("rerun");
  for (auto scenario : {Scenario::fig2, Scenario::fig3}) {
    RunConfig c;
    c.scenario = scenario;
    c.out = (dir.path / "a.csv").string();
    std::ostringstream log;
    REQUIRE(run(c, log) == 0);
    const auto first = slurp(c.out);
    REQUIRE(run(c, log) == 0);
    CHECK(slurp(c.out) == first);
  }
  RunConfig c;
  c.scenario = Scenario::fig3;
  c.out = (dir.path / "b.csv").string();
  std::ostringstream log;
  REQUIRE(run(c, log) == 0);
  CHECK(fs::exists(dir.path / "b.json"));
  CHECK(slurp(dir.path / "b.json").find("\"visibility\"") != std::string::npos);
}

TEST_CASE("failed runs leave no output behind") {
  TempDir dir("atomic");
  {
    io::AtomicFile f(dir.path / "x.csv");
    f.stream() << "partial";
  }
  CHECK(fs::is_empty(dir.path));
  {
    io::AtomicFile f(dir.path / "y.csv");
    f.stream() << "done\n";
    f.commit();
  }
  CHECK(slurp(dir.path / "y.csv") == "done\n");
  CHECK_FALSE(fs::exists(dir.path / "y.csv.partial"));

  RunConfig c;
  c.scenario = Scenario::fig3;
  c.out = (dir.path / "missing" / "fig3.csv").string();
  std::ostringstream log;
  CHECK_THROWS(run(c, log));
  CHECK_FALSE(fs::exists(dir.path / "missing"));
}

TEST_CASE("validate quick passes") {
  TempDir dir("validate");
  RunConfig c;
  c.scenario = Scenario::validate;
  c.quick = true;
  c.out = (dir.path / "report.json").string();
  std::ostringstream log;
  CHECK(run(c, log) == 0);
  CHECK(fs::exists(c.out));
  CHECK(log.str().find("FAIL") == std::string::npos);
}
