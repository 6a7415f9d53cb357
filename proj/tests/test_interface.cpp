#include "doctest.h"
#include "normdyn/config.hpp"
#include "normdyn/engine.hpp"
#include "normdyn/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

using namespace normdyn;

namespace {
bool has_error(const ConfigError& e, const std::string& field) {
  for (const auto& fe : e.errors())
    if (fe.field == field) return true;
  return false;
}

std::vector<std::string> data_lines(const std::string& csv) {
  std::vector<std::string> out;
  std::istringstream in(csv);
  for (std::string line; std::getline(in, line);)
    if (!line.empty() && line[0] != '#') out.push_back(line);
  return out;
}
}  // namespace

TEST_CASE("empty parameter block resolves to the reference defaults") {
  const auto spec = parse_config(R"({"command": "gradient", "params": {}})");
  CHECK(spec.command == Command::gradient);
  CHECK(spec.params.Z == 100);
  CHECK(spec.params.b == 1.0);
  CHECK(spec.params.lambda == 5.0);
  CHECK(spec.params.mu == 0.1);
}

TEST_CASE("out-of-domain values are rejected with the field and bound") {
  try {
    parse_config(R"({"command": "classify", "params": {"mu": 1.5}})");
    FAIL("expected rejection");
  } catch (const ConfigError& e) {
    CHECK(has_error(e, "params.mu"));
    CHECK(std::string(e.what()).find("[0,1]") != std::string::npos);
  }
}

TEST_CASE("schema violations carry field paths") {
  try {
    parse_config(R"({"command": "sweep", "params": {"N": "five", "bogus": 1}, "sweep": {"resolution": 2.5}})");
    FAIL("expected rejection");
  } catch (const ConfigError& e) {
    CHECK(has_error(e, "params.N"));
    CHECK(has_error(e, "params.bogus"));
    CHECK(has_error(e, "sweep.resolution"));
  }
  CHECK_THROWS_AS(parse_config("{not json"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"params": {}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"command": "dance"})"), ConfigError);
}

TEST_CASE("sweep with identical axes is rejected") {
  try {
    parse_config(R"({"command": "sweep", "sweep": {"x": {"axis": "c"}, "y": {"axis": "c"}}})");
    FAIL("expected rejection");
  } catch (const ConfigError& e) {
    CHECK(has_error(e, "sweep.y"));
  }
}

TEST_CASE("a full document round-trips into a RunSpec") {
  const auto spec = parse_config(R"({
    // comments are allowed
    "command": "simulate",
    "params": {"Z": 50, "N": 5, "c": 0.05, "r": 0.7, "m": 0.7, "weighting": "printed"},
    "simulate": {"steps": 1000, "burn_in": 10, "seed": 99, "mode": "sampled_groups",
                 "group_draws": 3, "thresholds": [25], "replicates": 2},
    "output": {"path": "x.csv", "format": "json"}
  })");
  CHECK(spec.params.Z == 50);
  CHECK(spec.params.weighting == PayoffWeighting::printed);
  CHECK(spec.sim.params == spec.params);
  CHECK(spec.sim.steps == 1000);
  CHECK(spec.sim.seed == 99);
  CHECK(spec.sim.mode == SimMode::sampled_groups);
  CHECK(spec.sim.group_draws == 3);
  CHECK(spec.replicates == 2);
  CHECK(spec.sim.thresholds == std::vector<int>{25});
  CHECK(spec.out_path == "x.csv");
  CHECK(spec.format == OutputFormat::json);
}

TEST_CASE("scan defaults follow the axis") {
  const auto spec = parse_config(R"({"command": "scan", "scan": {"axis": "N"}})");
  CHECK(spec.scan_values.front() == 2.0);
  CHECK(spec.scan_values.back() == 20.0);
  const auto c = parse_config(R"({"command": "scan"})");
  CHECK(c.scan_values.size() == 9);
}

TEST_CASE("gradient CSV schema") {
  const auto spec = parse_config(R"({"command": "gradient", "params": {"Z": 10}})");
  const auto csv = to_csv(spec, execute(spec));
  CHECK(csv.find("# params: Z=10 N=5 b=1 c=0.05 r=0.7 m=0.7 p_star=0.5 lambda=5 mu=0.1") != std::string::npos);
  const auto lines = data_lines(csv);
  REQUIRE(lines.size() == 12);
  CHECK(lines[0] == "k,G,Pi_C,Pi_D,T_plus,T_minus");
  CHECK(lines[1].rfind("0,0,", 0) == 0);
}

TEST_CASE("stationary CSV sums to one") {
  const auto spec = parse_config(R"({"command": "stationary", "params": {"Z": 30}})");
  const auto lines = data_lines(to_csv(spec, execute(spec)));
  CHECK(lines[0] == "k,sigma");
  double total = 0.0;
  for (std::size_t i = 1; i < lines.size(); ++i) total += std::stod(lines[i].substr(lines[i].find(',') + 1));
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("sweep CSV and JSON") {
  const auto spec =
      parse_config(R"({"command": "sweep", "params": {"Z": 20, "c": 0.01}, "sweep": {"resolution": 3}})");
  const auto result = execute(spec);
  const auto csv = to_csv(spec, result);
  CHECK(csv.find("# x_axis: r [0, 1]") != std::string::npos);
  CHECK(csv.find("# params:") != std::string::npos);
  const auto lines = data_lines(csv);
  CHECK(lines[0] == "x,y,regime");
  CHECK(lines.size() == 10);

  const auto doc = to_json(spec, result);
  CHECK(doc.contains("params"));
  CHECK(doc["command"] == "sweep");
  CHECK(doc["result"]["cells"].size() == 3);
  CHECK(doc["meta"]["version"].is_string());
  CHECK(doc["params"]["Z"] == 20);
}

TEST_CASE("outputs are byte-stable") {
  for (const char* doc : {R"({"command": "classify", "params": {"Z": 40}})",
                          R"({"command": "simulate", "params": {"Z": 20}, "simulate": {"steps": 5000}})",
                          R"({"command": "scan", "params": {"Z": 20}, "scan": {"axis": "rm"}})"}) {
    const auto spec = parse_config(doc);
    for (auto fmt : {OutputFormat::csv, OutputFormat::json, OutputFormat::svg})
      CHECK(render(spec, execute(spec), fmt) == render(spec, execute(spec), fmt));
  }
}

TEST_CASE("simulate output records rng and extension flag") {
  const auto spec = parse_config(
      R"({"command": "simulate", "params": {"Z": 20}, "simulate": {"steps": 2000, "mode": "sampled_groups", "seed": 5}})");
  const auto doc = to_json(spec, execute(spec));
  CHECK(doc["meta"]["rng"] == "mt19937_64");
  CHECK(doc["meta"]["seed"] == 5);
  CHECK(doc["result"]["extension"] == true);
  const auto csv = to_csv(spec, execute(spec));
  CHECK(csv.find("# rng: mt19937_64 seed=5") != std::string::npos);
  CHECK(csv.find("extension") != std::string::npos);
}

TEST_CASE("svg renderings are well-formed documents") {
  const auto spec = parse_config(R"({"command": "sweep", "params": {"Z": 20}, "sweep": {"resolution": 3}})");
  const auto svg = to_svg(spec, execute(spec));
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("</svg>") != std::string::npos);
  CHECK(svg.find("ALL_DEFECT") != std::string::npos);
}

TEST_CASE("write failures carry the path") {
  try {
    write_file("/nonexistent-dir/out.csv", "x");
    FAIL("expected failure");
  } catch (const IoError& e) {
    CHECK(std::string(e.what()).find("/nonexistent-dir/out.csv") != std::string::npos);
  }
}

TEST_CASE("number formatting round-trips") {
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(1.0) == "1");
  CHECK(std::stod(format_number(1.0 / 3.0)) == 1.0 / 3.0);
}
