#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "fockmarket/csv.hpp"
#include "fockmarket/dynamics.hpp"
#include "fockmarket/errors.hpp"
#include "fockmarket/kms.hpp"
#include "fockmarket/scenario.hpp"

namespace {

fockmarket::RunMethod method_from_string(const std::string& s) {
  using fockmarket::RunMethod;
  if (s == "auto") return RunMethod::Auto;
  if (s == "exact") return RunMethod::Exact;
  if (s == "onebody") return RunMethod::OneBody;
  return RunMethod::Series;
}

std::string optional_value(const std::optional<double>& v) {
  return v ? fockmarket::format_value(*v) : "-";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Operator-market simulator: exact sector dynamics, closed-form "
               "mean-field limits and equilibrium solvers"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Evaluate a scenario and write CSV/report artifacts");
  std::string run_path;
  run->add_option("scenario", run_path, "Scenario JSON file")->required();
  std::string out_dir = ".";
  run->add_option("--out", out_dir, "Output directory (created if missing)");
  bool svg = false;
  run->add_flag("--svg", svg, "Also write an SVG line plot");
  std::string method = "auto";
  run->add_option("--method", method, "Evaluation method")
      ->check(CLI::IsMember({"auto", "exact", "onebody", "series"}));
  int order = 8;
  run->add_option("--order", order, "Truncation order for --method series")
      ->check(CLI::Range(0, 12));

  auto* verify =
      app.add_subcommand("verify", "Re-evolve a scenario exactly and report conserved drifts");
  std::string verify_path;
  verify->add_option("scenario", verify_path, "Scenario JSON file")->required();
  bool inject = false;
  verify->add_flag("--inject-noncommuting", inject)->group("");  // test hook, hidden

  auto* kms = app.add_subcommand("kms", "Solve the equilibrium occupation split");
  double phi = 0;
  kms->add_option("--phi", phi, "Coupling difference")->required();
  double ql = 0;
  kms->add_option("--ql", ql, "Occupation budget n_a + n_c")->required();
  double beta = 1.0;
  kms->add_option("--beta", beta, "Inverse temperature");

  auto* price = app.add_subcommand("price", "Effective integer price of a supply/price pair");
  double of = 0;
  price->add_option("--of", of, "Initial supply quanta")->required();
  double pr = 0;
  price->add_option("--pr", pr, "Initial price quanta")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (run->parsed()) {
      fockmarket::RunOptions options;
      options.out_dir = out_dir;
      options.svg = svg;
      options.method = method_from_string(method);
      options.series_order = order;
      options.max_sector_dim = fockmarket::max_dim_from_env();
      const auto scenario = fockmarket::load_scenario(run_path);
      const auto result = fockmarket::run_scenario(scenario, options);
      std::cout << "wrote " << result.csv_path.string() << '\n';
      if (!result.svg_path.empty()) std::cout << "wrote " << result.svg_path.string() << '\n';
      std::cout << "wrote " << result.report_path.string() << '\n';
      std::cout << fockmarket::format_report(result.report);
      return result.report.pass() ? 0 : 3;
    }
    if (verify->parsed()) {
      fockmarket::RunOptions options;
      options.max_sector_dim = fockmarket::max_dim_from_env();
      const auto scenario = fockmarket::load_scenario(verify_path);
      const auto report = fockmarket::verify_scenario(scenario, options, inject);
      std::cout << fockmarket::format_report(report);
      return report.pass() ? 0 : 3;
    }
    if (kms->parsed()) {
      const auto solution = fockmarket::solve_pair(phi, ql, beta);
      std::cout << "case: " << fockmarket::to_string(solution.case_label) << '\n'
                << "outcome: " << fockmarket::to_string(solution.outcome) << '\n'
                << "beta0: " << optional_value(solution.beta0) << '\n'
                << "na0: " << optional_value(solution.na0) << '\n'
                << "nc0: " << optional_value(solution.nc0) << '\n'
                << "residual: " << fockmarket::format_value(solution.residual) << '\n';
      return 0;
    }
    if (price->parsed()) {
      std::cout << fockmarket::effective_price(of, pr) << '\n';
      return 0;
    }
  } catch (const fockmarket::SectorOverflowError& e) {
    std::cerr << "sector overflow: " << e.what() << '\n';
    return 2;
  } catch (const fockmarket::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
