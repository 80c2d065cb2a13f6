#pragma once

// Scenario configuration, trajectory generation, ICRB-driven measurement
// sampling and the Monte Carlo harness.

#include <Eigen/Core>

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "liepose/bounds.hpp"
#include "liepose/channel.hpp"
#include "liepose/lie.hpp"
#include "liepose/tracking.hpp"

namespace liepose {

struct TrajectorySegment {
  Vector3d v = Vector3d::Zero();  ///< m/s
  Vector3d w = Vector3d::Zero();  ///< rad/s
  int steps = 1;
  double dt = 0.5;  ///< s
};

enum class FilterKind { kFusion, kEskf, kEuler };
enum class FilterSelection { kFusion, kEskf, kEuler, kAll };

[[nodiscard]] std::string to_string(FilterKind kind);
[[nodiscard]] FilterSelection parse_filter_selection(const std::string& name);
[[nodiscard]] std::vector<FilterKind> selected_filters(FilterSelection selection);

struct ScenarioConfig {
  std::vector<AnchorConfig> anchors;
  ArrayGeometry ue_array;
  SignalConfig signal;
  /// When set, tx_power_dbm is replaced so that the mean per-sample SNR at
  /// the start pose equals this value.
  std::optional<double> target_snr_db;
  Posed ue_start;
  std::vector<TrajectorySegment> segments;
  int mc_runs = 100;
  std::uint64_t seed = 1;
  FilterSelection filter = FilterSelection::kAll;
  double sigma_rho_m = 0.01;
  double sigma_r_rad = 0.005;
  FusionOptions fusion;

  /// Throws ConfigError.
  void validate() const;
};

[[nodiscard]] ScenarioConfig default_scenario();

/// YAML scenario; missing keys keep their default_scenario() value, unknown
/// keys are rejected. Throws ConfigError or IoError.
[[nodiscard]] ScenarioConfig parse_scenario(const std::string& yaml_text);
[[nodiscard]] ScenarioConfig load_scenario(const std::string& path);

/// Mean per-sample SNR (dB) at the start pose.
[[nodiscard]] double start_snr_db(const ScenarioConfig& cfg);

/// Copy of cfg with tx_power_dbm calibrated to target_snr_db (no-op if unset).
[[nodiscard]] ScenarioConfig with_calibrated_power(const ScenarioConfig& cfg);

/// Orientation from intrinsic Z-Y-X angles in degrees.
[[nodiscard]] Rotationd rotation_from_ypr_deg(const Vector3d& ypr_deg);

// ---------------------------------------------------------------------------

/// Sample 0 is `start`; sample i is F(segment containing i) * sample i-1.
/// The list has sum(steps) entries.
[[nodiscard]] std::vector<Posed> generate_trajectory(const Posed& start,
                                                     const std::vector<TrajectorySegment>& segments);

/// commands[i] moves sample i to sample i + 1.
[[nodiscard]] std::vector<MotionCommand> trajectory_commands(
    const std::vector<TrajectorySegment>& segments, const CovTangent& process_noise);

/// T_meas = exp(n) T_truth with n ~ N(0, measurement_covariance(icrb, truth)).
[[nodiscard]] PoseMeasurement sample_measurement(const Posed& truth, const IcrbReport& report,
                                                 std::mt19937_64& rng);

/// Counter-based per-run seed.
[[nodiscard]] std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

// ---------------------------------------------------------------------------

/// Squared errors of one estimator over all runs: [run][step].
struct FilterSeries {
  std::string name;
  std::vector<std::vector<double>> sq_pos_err;
  std::vector<std::vector<double>> sq_rot_err;

  [[nodiscard]] std::vector<double> pos_rmse() const;
  [[nodiscard]] std::vector<double> rot_rmse() const;
  /// Mean over steps of the per-step rotation RMSE.
  [[nodiscard]] double mean_rot_rmse() const;
  [[nodiscard]] double mean_rot_rmse(const std::vector<int>& runs) const;
  /// Sorted rotation errors at the last step of every run.
  [[nodiscard]] std::vector<double> terminal_rot_errors() const;
};

struct MetricSeries {
  std::vector<double> time_s;
  /// "meas" first, then the selected filters in fusion, eskf, euler order.
  std::vector<FilterSeries> series;
  int runs_requested = 0;
  int failed_runs = 0;

  [[nodiscard]] const FilterSeries& find(const std::string& name) const;
};

struct MonteCarloOptions {
  int workers = 1;
  /// Measurements equal the truth (noise-free tracking).
  bool exact_measurements = false;
};

/// Runs cfg.mc_runs independent tracks over the configured trajectory.
/// Runs whose filters throw are dropped and counted in failed_runs.
[[nodiscard]] MetricSeries run_monte_carlo(const ScenarioConfig& cfg,
                                           const MonteCarloOptions& options = {});

/// Fraction of paired bootstrap resamples (over runs) in which
/// a.mean_rot_rmse() <= b.mean_rot_rmse().
[[nodiscard]] double bootstrap_ordering_confidence(const FilterSeries& a, const FilterSeries& b,
                                                   int resamples, std::uint64_t seed);

// ---------------------------------------------------------------------------

struct BoundsRow {
  double power_dbm = 0.0;
  double peb_m = 0.0;
  double rmeb_rad = 0.0;
  bool observable = true;
};

/// Bounds at the start pose for every power, with identical beams.
[[nodiscard]] std::vector<BoundsRow> bounds_sweep(const ScenarioConfig& cfg,
                                                  const std::vector<double>& powers_dbm);

// ---------------------------------------------------------------------------

/// Shortest round-trip decimal form.
[[nodiscard]] std::string format_double(double value);

/// Throws IoError.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

void write_bounds_csv(const std::string& path, const std::vector<BoundsRow>& rows);
/// step,time_s then pos_rmse_m_<name>,rot_rmse_rad_<name> per series.
void write_rmse_csv(const std::string& path, const MetricSeries& metrics);
/// error_rad,cdf of the terminal rotation errors.
void write_cdf_csv(const std::string& path, const FilterSeries& series);

}  // namespace liepose
