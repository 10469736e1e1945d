#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "fockmarket/dynamics.hpp"
#include "fockmarket/hamiltonians.hpp"
#include "fockmarket/kms.hpp"
#include "fockmarket/meanfield.hpp"

namespace fockmarket {

enum class ModelKind { Model1, Model2, MeanField, MeanFieldAppendix2, Kms };

struct TimeGridSpec {
  double t_max = 0;
  std::size_t points = 0;
};

// A runnable experiment: a model configuration, an optional time grid
// (defaulted from the model's characteristic frequency when omitted) and the
// channels to write.
struct Scenario {
  std::string name = "scenario";
  ModelKind model = ModelKind::Model1;
  std::variant<ModelOneConfig, ModelTwoConfig, MeanFieldParams, Appendix2Params, KmsProblem>
      config;
  std::optional<TimeGridSpec> time;
  std::vector<std::string> outputs;  // empty -> model default channel set
};

Scenario scenario_from_json(const nlohmann::json& j);
nlohmann::json scenario_to_json(const Scenario& scenario);
Scenario load_scenario(const std::filesystem::path& path);

enum class RunMethod { Auto, Exact, OneBody, Series };

struct RunOptions {
  std::filesystem::path out_dir = ".";
  bool svg = false;
  RunMethod method = RunMethod::Auto;
  int series_order = 8;
  std::size_t max_sector_dim = kDefaultMaxSectorDim;
};

inline constexpr double kConservationTol = 1e-8;

struct ConservationEntry {
  std::string name;
  double initial = 0;
  double max_drift = 0;
  bool pass = true;
};

struct ConservationReport {
  double tolerance = kConservationTol;
  std::vector<ConservationEntry> entries;
  std::vector<std::string> notes;

  bool pass() const;
};

std::string format_report(const ConservationReport& report);

struct RunResult {
  TimeSeries series;  // all channels the model provides
  ConservationReport report;
  std::filesystem::path csv_path;
  std::filesystem::path svg_path;     // empty unless requested
  std::filesystem::path report_path;
  double radius_hint = 0;  // > 0 only for the series method
};

// Evaluates the scenario and writes <name>.csv (selected channels),
// <name>.conservation.txt and optionally <name>.svg into out_dir.
RunResult run_scenario(const Scenario& scenario, const RunOptions& options);

// Exact re-evolution of a model1/model2 scenario measuring the drift of
// every conserved observable. Mean-field and equilibrium scenarios have no
// operator dynamics to verify and throw ConfigError. inject_noncommuting is
// a test hook that adds a conservation-breaking exchange term (and the
// matching sector generator) to demonstrate a failing report.
ConservationReport verify_scenario(const Scenario& scenario, const RunOptions& options,
                                   bool inject_noncommuting = false);

// FOCKMARKET_MAX_DIM environment override of the sector cap.
std::size_t max_dim_from_env(std::size_t fallback = kDefaultMaxSectorDim);

// All channels a scenario can emit, in canonical order.
std::vector<std::string> default_channels(const Scenario& scenario);

}  // namespace fockmarket
