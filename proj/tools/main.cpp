// Command-line front end: bound sweeps, single tracks and Monte Carlo batches.

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "liepose/simkit.hpp"

namespace {

using namespace liepose;

enum ExitCode { kOk = 0, kFailure = 1, kConfig = 2, kUnobservable = 3, kIo = 4 };

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kConfigError:
    case ErrorCode::kInvalidArgument: return kConfig;
    case ErrorCode::kUnobservableState: return kUnobservable;
    case ErrorCode::kIoError: return kIo;
    default: return kFailure;
  }
}

// "a:b:c" is start:step:stop; a single number is one power.
std::vector<double> parse_powers(const std::string& text) {
  std::vector<double> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t colon = text.find(':', start);
    const std::string token = text.substr(start, colon - start);
    try {
      std::size_t used = 0;
      parts.push_back(std::stod(token, &used));
      if (used != token.size()) throw std::invalid_argument(token);
    } catch (const std::exception&) {
      throw Error(ErrorCode::kConfigError, "bad power list '" + text + "'");
    }
    if (colon == std::string::npos) break;
    start = colon + 1;
  }
  if (parts.size() == 1) return parts;
  if (parts.size() != 3 || !(parts[1] > 0.0) || parts[2] < parts[0]) {
    throw Error(ErrorCode::kConfigError, "power list must be start:step:stop with step > 0");
  }
  std::vector<double> powers;
  const int count = static_cast<int>(std::floor((parts[2] - parts[0]) / parts[1] + 1e-9)) + 1;
  for (int i = 0; i < count; ++i) powers.push_back(parts[0] + i * parts[1]);
  return powers;
}

ScenarioConfig load(const std::string& path) {
  return path.empty() ? default_scenario() : load_scenario(path);
}

void print_summary(const MetricSeries& metrics) {
  std::cout << "runs " << metrics.runs_requested << ", failed " << metrics.failed_runs << "\n";
  for (const auto& s : metrics.series) {
    if (s.sq_rot_err.empty()) continue;
    std::cout << s.name << ": mean rotation RMSE " << s.mean_rot_rmse() << " rad\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"6D pose bounds and tracking on SE(3)"};
  app.require_subcommand(1);
  std::optional<std::uint64_t> global_seed;
  app.add_option("--seed", global_seed, "Master seed for measurement noise");

  std::string config_path;
  std::string out_path;

  auto* bounds = app.add_subcommand("bounds", "PEB/RMEB at the start pose over a power sweep");
  std::string powers = "-20:5:20";
  bounds->add_option("--config", config_path, "Scenario YAML (defaults to the built-in scenario)");
  bounds->add_option("--powers", powers, "Powers in dBm as start:step:stop");
  bounds->add_option("--out", out_path, "Output CSV")->required();

  auto* track = app.add_subcommand("track", "Single noisy track over the configured trajectory");
  std::string filter = "all";
  track->add_option("--config", config_path, "Scenario YAML");
  track->add_option("--filter", filter, "fusion, eskf, euler or all");
  track->add_option("--out", out_path, "Output CSV")->required();

  auto* mc = app.add_subcommand("mc", "Monte Carlo batch");
  std::optional<int> runs;
  std::optional<std::uint64_t> mc_seed;
  std::string out_prefix;
  int workers = 1;
  mc->add_option("--config", config_path, "Scenario YAML");
  mc->add_option("--runs", runs, "Number of runs (overrides the config)");
  mc->add_option("--seed", mc_seed, "Master seed (overrides the config)");
  mc->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);
  mc->add_option("--out-prefix", out_prefix, "Writes <prefix>_rmse.csv and <prefix>_cdf_<filter>.csv")
      ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    ScenarioConfig cfg = load(config_path);
    if (global_seed) cfg.seed = *global_seed;

    if (*bounds) {
      const auto rows = bounds_sweep(cfg, parse_powers(powers));
      write_bounds_csv(out_path, rows);
      for (const auto& row : rows) {
        std::cout << row.power_dbm << " dBm: peb " << row.peb_m << " m, rmeb " << row.rmeb_rad
                  << " rad" << (row.observable ? "" : " (unobservable)") << "\n";
      }
    } else if (*track) {
      cfg.filter = parse_filter_selection(filter);
      cfg.mc_runs = 1;
      const MetricSeries metrics = run_monte_carlo(cfg);
      write_rmse_csv(out_path, metrics);
      print_summary(metrics);
    } else if (*mc) {
      if (runs) cfg.mc_runs = *runs;
      if (mc_seed) cfg.seed = *mc_seed;
      cfg.validate();
      MonteCarloOptions options;
      options.workers = workers;
      const MetricSeries metrics = run_monte_carlo(cfg, options);
      write_rmse_csv(out_prefix + "_rmse.csv", metrics);
      for (const auto& s : metrics.series) {
        write_cdf_csv(out_prefix + "_cdf_" + s.name + ".csv", s);
      }
      print_summary(metrics);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kOk;
}
