#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "fockmarket/errors.hpp"
#include "fockmarket/scenario.hpp"

using namespace fockmarket;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

json minimal_model1() {
  return json::parse(R"({
    "model": "model1",
    "config": {"alpha": [1.0, 2.0], "p": [[0.0, 1.0], [1.0, 0.0]], "initial_n": [2, 0]}
  })");
}

json small_model2() {
  return json::parse(R"({
    "name": "pair",
    "model": "model2",
    "config": {
      "alpha": [1.0, 1.0], "beta": [1.0, 1.0],
      "p": [[0.0, 1.0], [1.0, 0.0]],
      "price_M": 1,
      "initial_n": [1, 0], "initial_k": [0, 1],
      "initial_O": 1, "initial_Mp": 1
    },
    "time": {"t_max": 5.0, "points": 21}
  })");
}

fs::path scratch_dir(const std::string& leaf) {
  const fs::path dir = fs::temp_directory_path() / "fockmarket_scenario_tests" / leaf;
  fs::remove_all(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string first_line(const std::string& text) {
  return text.substr(0, text.find('\n'));
}

}  // namespace

TEST_CASE("a minimal scenario parses with documented defaults") {
  const Scenario s = scenario_from_json(minimal_model1());
  CHECK(s.name == "scenario");
  CHECK(s.model == ModelKind::Model1);
  CHECK(!s.time.has_value());
  CHECK(s.outputs.empty());
  const auto& cfg = std::get<ModelOneConfig>(s.config);
  CHECK(cfg.alpha.size() == 2);
  CHECK(cfg.price_M == 0);
  CHECK(cfg.epsilon == 1.0);
}

TEST_CASE("unknown models and stray keys are rejected with pointed messages") {
  json j = minimal_model1();
  j["model"] = "model3";
  try {
    scenario_from_json(j);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("unknown model") != std::string::npos);
  }

  j = minimal_model1();
  j["surprise"] = 1;
  CHECK_THROWS_AS(scenario_from_json(j), ConfigError);

  j = minimal_model1();
  j["config"]["bogus"] = 1;
  CHECK_THROWS_AS(scenario_from_json(j), ConfigError);

  j = minimal_model1();
  j["config"].erase("p");
  CHECK_THROWS_AS(scenario_from_json(j), ConfigError);

  j = minimal_model1();
  j["config"]["alpha"] = "fast";
  CHECK_THROWS_AS(scenario_from_json(j), ConfigError);
}

TEST_CASE("scenario names must be usable as file stems") {
  json j = minimal_model1();
  j["name"] = "";
  CHECK_THROWS_AS(scenario_from_json(j), ConfigError);
  j["name"] = "a/b";
  CHECK_THROWS_AS(scenario_from_json(j), ConfigError);
  j["name"] = "two-traders";
  CHECK(scenario_from_json(j).name == "two-traders");
}

TEST_CASE("time grids are validated") {
  json j = minimal_model1();
  j["time"] = {{"t_max", 2.0}, {"points", 1}};
  CHECK_THROWS_AS(scenario_from_json(j), ConfigError);
  j["time"] = {{"t_max", 0.0}, {"points", 10}};
  CHECK_THROWS_AS(scenario_from_json(j), ConfigError);
  j["time"] = {{"t_max", 2.0}, {"points", 2000000}};
  CHECK_THROWS_AS(scenario_from_json(j), ConfigError);
  j["time"] = {{"t_max", 2.0}, {"points", 10}, {"dt", 0.1}};
  CHECK_THROWS_AS(scenario_from_json(j), ConfigError);
  j["time"] = {{"t_max", 2.0}, {"points", 10}};
  const Scenario s = scenario_from_json(j);
  REQUIRE(s.time.has_value());
  CHECK(s.time->points == 10);
}

TEST_CASE("serialization is stable after one round trip") {
  json sources[] = {
      minimal_model1(),
      small_model2(),
      json::parse(R"({
        "model": "meanfield",
        "config": {"Phi": 2.0, "X0": 1.0, "eta": 0.25, "Qbar": 1.25,
                   "traders": [{"n": 2.0, "k": 1.0}, {"n": 0.5, "k": 3.0, "X0l": [0.2, -0.1]}]}
      })"),
      json::parse(R"({
        "model": "meanfield-appendix2",
        "config": {"PhiTilde": 0.9, "X0": [0.2, 0.6],
                   "traders": [{"gamma": 0.9, "n": 1.0, "k": 2.0}]}
      })"),
      json::parse(R"({
        "model": "kms",
        "config": {"Phi": 1.5, "Ql": 4.0, "beta": 0.7}
      })"),
  };
  for (const json& source : sources) {
    const json once = scenario_to_json(scenario_from_json(source));
    const json twice = scenario_to_json(scenario_from_json(once));
    CHECK(once == twice);
    CHECK(once.dump() == twice.dump());
  }
}

TEST_CASE("complex couplings accept both spellings") {
  json j = json::parse(R"({
    "model": "meanfield",
    "config": {"Phi": 2.0, "X0": [0.3, 0.4], "eta": 0.25, "Qbar": 1.25,
               "traders": [{"n": 1.0, "k": 1.0}]}
  })");
  CHECK(std::get<MeanFieldParams>(scenario_from_json(j).config).X0 == Complex(0.3, 0.4));
  j["config"]["X0"] = 0.5;
  CHECK(std::get<MeanFieldParams>(scenario_from_json(j).config).X0 == Complex(0.5, 0.0));
}

TEST_CASE("requested channels must exist for the model") {
  json j = minimal_model1();
  j["outputs"] = {"n_1", "n_3"};
  try {
    scenario_from_json(j);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("unknown output channel") != std::string::npos);
  }
}

TEST_CASE("running a scenario writes deterministic artifacts") {
  json j = minimal_model1();
  j["name"] = "hop2";
  j["time"] = {{"t_max", 2.0}, {"points", 9}};
  const Scenario s = scenario_from_json(j);

  RunOptions opts;
  opts.svg = true;
  opts.out_dir = scratch_dir("run_a");
  const RunResult a = run_scenario(s, opts);
  opts.out_dir = scratch_dir("run_b");
  const RunResult b = run_scenario(s, opts);

  CHECK(fs::exists(a.csv_path));
  CHECK(fs::exists(a.report_path));
  CHECK(fs::exists(a.svg_path));
  CHECK(a.csv_path.filename() == "hop2.csv");
  CHECK(a.report_path.filename() == "hop2.conservation.txt");
  CHECK(a.svg_path.filename() == "hop2.svg");

  const std::string csv = slurp(a.csv_path);
  CHECK(first_line(csv) == "t,n_1,n_2,P_r");
  CHECK(csv == slurp(b.csv_path));
  CHECK(slurp(a.svg_path).rfind("<svg xmlns=", 0) == 0);

  const std::string report = slurp(a.report_path);
  CHECK(report.find("conservation report (tolerance 1e-08)") == 0);
  CHECK(report.find("N initial=2 ") != std::string::npos);
  CHECK(report.find("overall PASS") != std::string::npos);

  CHECK(a.report.pass());
  CHECK(a.radius_hint == 0.0);
  CHECK(a.series.has_channel("n_1"));
  CHECK(a.series.has_channel("P_r"));
}

TEST_CASE("explicit outputs control the column order") {
  json j = minimal_model1();
  j["name"] = "cols";
  j["time"] = {{"t_max", 1.0}, {"points", 3}};
  j["outputs"] = {"P_r", "n_2"};
  RunOptions opts;
  opts.out_dir = scratch_dir("columns");
  const RunResult r = run_scenario(scenario_from_json(j), opts);
  CHECK(first_line(slurp(r.csv_path)) == "t,P_r,n_2");
}

TEST_CASE("the propagation methods agree on a hopping pair") {
  json j = minimal_model1();
  j["time"] = {{"t_max", 2.0}, {"points", 17}};
  const Scenario s = scenario_from_json(j);

  RunOptions exact;
  exact.out_dir = scratch_dir("method_exact");
  exact.method = RunMethod::Exact;
  const RunResult a = run_scenario(s, exact);

  RunOptions onebody;
  onebody.out_dir = scratch_dir("method_onebody");
  onebody.method = RunMethod::OneBody;
  const RunResult b = run_scenario(s, onebody);

  const auto& na = a.series.channel("n_1");
  const auto& nb = b.series.channel("n_1");
  REQUIRE(na.size() == nb.size());
  for (std::size_t i = 0; i < na.size(); ++i) {
    CHECK(na[i] == doctest::Approx(nb[i]).epsilon(1e-8));
  }
}

TEST_CASE("the series method reports its trust radius") {
  json j = minimal_model1();
  j["name"] = "tail";
  j["time"] = {{"t_max", 2.0}, {"points", 9}};
  RunOptions opts;
  opts.out_dir = scratch_dir("series");
  opts.method = RunMethod::Series;
  opts.series_order = 6;
  const RunResult r = run_scenario(scenario_from_json(j), opts);
  CHECK(r.radius_hint > 0.0);
  bool noted = false;
  for (const auto& note : r.report.notes) {
    if (note.find("trust radius") != std::string::npos) noted = true;
  }
  CHECK(noted);
}

TEST_CASE("resonant mean-field runs flag band violations without clamping") {
  const json j = json::parse(R"({
    "name": "res",
    "model": "meanfield",
    "config": {"Phi": 1.7, "X0": [0.0, 0.5], "eta": 1.0, "Qbar": 2.0,
               "traders": [{"n": 1.0, "k": 3.0, "X0l": [2.0, 0.0]}]},
    "time": {"t_max": 6.5, "points": 66}
  })");
  RunOptions opts;
  opts.out_dir = scratch_dir("resonant");
  const RunResult r = run_scenario(scenario_from_json(j), opts);
  CHECK(first_line(slurp(r.csv_path)) == "t,n_1,k_1,Pi_1");
  CHECK(r.report.pass());  // Q_1 stays conserved even when n_1 spills over
  bool noted = false;
  for (const auto& note : r.report.notes) {
    if (note.find("leaves the physical band") != std::string::npos) noted = true;
  }
  CHECK(noted);

  RunOptions wrong = opts;
  wrong.method = RunMethod::Exact;
  CHECK_THROWS_AS(run_scenario(scenario_from_json(j), wrong), ConfigError);
}

TEST_CASE("equilibrium scenarios emit a single static row") {
  json j = json::parse(R"({
    "name": "eq",
    "model": "kms",
    "config": {"Phi": 1.5, "Ql": 4.0, "beta": 0.7},
    "time": {"t_max": 1.0, "points": 5}
  })");
  RunOptions opts;
  opts.out_dir = scratch_dir("kms_run");
  const RunResult r = run_scenario(scenario_from_json(j), opts);
  const std::string csv = slurp(r.csv_path);
  CHECK(first_line(csv) == "t,beta0,nc0,na0");
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 2);

  bool labelled = false, ignored = false;
  for (const auto& note : r.report.notes) {
    if (note.find("case ia, outcome solution") != std::string::npos) labelled = true;
    if (note.find("time grid ignored") != std::string::npos) ignored = true;
  }
  CHECK(labelled);
  CHECK(ignored);

  // a regime with no admissible temperature leaves the numeric cells empty
  j["name"] = "none";
  j["config"] = {{"Phi", 1.5}, {"Ql", 4.0}, {"n_a", 1.0}, {"n_c", 3.0}};
  j.erase("time");
  const RunResult none = run_scenario(scenario_from_json(j), opts);
  const std::string row = slurp(none.csv_path);
  CHECK(row.find("nan") != std::string::npos);
}

TEST_CASE("verify re-evolves the operator models and reports drifts") {
  RunOptions opts;

  const Scenario m1 = scenario_from_json([&] {
    json j = minimal_model1();
    j["time"] = {{"t_max", 2.0}, {"points", 9}};
    return j;
  }());
  const ConservationReport r1 = verify_scenario(m1, opts);
  REQUIRE(r1.entries.size() == 1);
  CHECK(r1.entries[0].name == "N");
  CHECK(r1.entries[0].max_drift < 1e-10);
  CHECK(r1.pass());

  const Scenario m2 = scenario_from_json(small_model2());
  const ConservationReport r2 = verify_scenario(m2, opts);
  REQUIRE(r2.entries.size() == 5);
  CHECK(r2.entries[0].name == "N");
  CHECK(r2.entries[1].name == "K");
  CHECK(r2.entries[2].name == "Gamma");
  CHECK(r2.entries[3].name == "Q_1");
  CHECK(r2.entries[4].name == "Q_2");
  for (const auto& e : r2.entries) CHECK(e.max_drift < 1e-9);
  CHECK(r2.pass());

  const json mf = json::parse(R"({
    "model": "meanfield",
    "config": {"Phi": 1.0, "eta": 0.5, "Qbar": 2.5, "X0": 1.0,
               "traders": [{"n": 0.0, "k": 5.0}]}
  })");
  CHECK_THROWS_AS(verify_scenario(scenario_from_json(mf), opts), ConfigError);
}

TEST_CASE("an injected exchange term makes the drift report fail") {
  RunOptions opts;
  const Scenario m1 = scenario_from_json([&] {
    json j = minimal_model1();
    j["time"] = {{"t_max", 2.0}, {"points", 9}};
    return j;
  }());
  const ConservationReport broken1 = verify_scenario(m1, opts, true);
  CHECK(!broken1.pass());
  bool noted = false;
  for (const auto& note : broken1.notes) {
    if (note.find("injected") != std::string::npos) noted = true;
  }
  CHECK(noted);

  const ConservationReport broken2 = verify_scenario(scenario_from_json(small_model2()), opts, true);
  CHECK(!broken2.pass());
}

TEST_CASE("the sector cap option propagates to enumeration") {
  json j = minimal_model1();
  j["time"] = {{"t_max", 1.0}, {"points", 3}};
  RunOptions opts;
  opts.out_dir = scratch_dir("overflow");
  opts.method = RunMethod::Exact;  // the one-body path never enumerates a sector
  opts.max_sector_dim = 2;
  try {
    run_scenario(scenario_from_json(j), opts);
    FAIL("expected SectorOverflowError");
  } catch (const SectorOverflowError& e) {
    CHECK(e.bound == 2);
    CHECK(e.reached > 2);
  }
}

TEST_CASE("the environment override of the sector cap is parsed strictly") {
  unsetenv("FOCKMARKET_MAX_DIM");
  CHECK(max_dim_from_env(77) == 77);
  setenv("FOCKMARKET_MAX_DIM", "123", 1);
  CHECK(max_dim_from_env(77) == 123);
  for (const char* bad : {"abc", "0", "12x", "-4"}) {
    setenv("FOCKMARKET_MAX_DIM", bad, 1);
    CHECK_THROWS_AS(max_dim_from_env(77), ConfigError);
  }
  unsetenv("FOCKMARKET_MAX_DIM");
}

TEST_CASE("scenario files are loaded with useful failure modes") {
  const fs::path dir = scratch_dir("files");
  fs::create_directories(dir);

  try {
    load_scenario(dir / "missing.json");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("cannot open") != std::string::npos);
  }

  const fs::path broken = dir / "broken.json";
  std::ofstream(broken) << "{ not json";
  try {
    load_scenario(broken);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("not valid JSON") != std::string::npos);
  }

  const fs::path good = dir / "good.json";
  std::ofstream(good) << minimal_model1().dump(2);
  const Scenario s = load_scenario(good);
  CHECK(scenario_to_json(s) == scenario_to_json(scenario_from_json(minimal_model1())));
}
