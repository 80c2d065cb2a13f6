#include "liepose/simkit.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <set>
#include <sstream>
#include <thread>

#include "liepose/linalg.hpp"

namespace liepose {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

[[noreturn]] void config_error(const std::string& what) {
  throw Error(ErrorCode::kConfigError, what);
}

void check_keys(const YAML::Node& node, const std::string& where,
                const std::set<std::string>& allowed) {
  if (!node.IsMap()) config_error(where + " must be a mapping");
  for (const auto& item : node) {
    const auto key = item.first.as<std::string>();
    if (!allowed.contains(key)) config_error("unknown key '" + key + "' in " + where);
  }
}

template <typename T>
void read(const YAML::Node& node, const char* key, T& out) {
  if (const YAML::Node value = node[key]) {
    try {
      out = value.as<T>();
    } catch (const YAML::Exception&) {
      config_error(std::string("invalid value for '") + key + "'");
    }
  }
}

void read_vec3(const YAML::Node& node, const char* key, Vector3d& out) {
  const YAML::Node value = node[key];
  if (!value) return;
  if (!value.IsSequence() || value.size() != 3) {
    config_error(std::string("'") + key + "' must be a list of three numbers");
  }
  for (int i = 0; i < 3; ++i) {
    try {
      out(i) = value[i].as<double>();
    } catch (const YAML::Exception&) {
      config_error(std::string("invalid number in '") + key + "'");
    }
  }
}

ArrayGeometry read_array(const YAML::Node& node, const std::string& where, double wavelength,
                         const ArrayGeometry& fallback) {
  if (!node) return fallback;
  check_keys(node, where, {"rows", "cols", "spacing_m"});
  int rows = 0, cols = 0;
  double spacing = 0.5 * wavelength;
  read(node, "rows", rows);
  read(node, "cols", cols);
  read(node, "spacing_m", spacing);
  if (rows < 1 || cols < 1 || !(spacing > 0.0)) config_error(where + " needs rows, cols >= 1");
  return ArrayGeometry::upa(rows, cols, spacing);
}

void read_device(const YAML::Node& node, Vector3d& position, Vector3d& ypr_deg) {
  read_vec3(node, "position_m", position);
  read_vec3(node, "orientation_ypr_deg", ypr_deg);
}

double squared_norm_error(const Posed& estimate, const Posed& truth) {
  return (estimate.position() - truth.position()).squaredNorm();
}

double squared_rotation_error(const Posed& estimate, const Posed& truth) {
  const double e = rotation_error(estimate.rotation(), truth.rotation());
  return e * e;
}

struct RunErrors {
  std::vector<std::vector<double>> sq_pos;  // [series][step]
  std::vector<std::vector<double>> sq_rot;
};

struct Prepared {
  std::vector<Posed> truth;
  std::vector<MotionCommand> commands;
  std::vector<IcrbReport> reports;
  std::vector<FilterKind> filters;
};

RunErrors run_single(const ScenarioConfig& cfg, const Prepared& prep, std::uint64_t run,
                     const MonteCarloOptions& options) {
  const std::size_t steps = prep.truth.size();
  std::mt19937_64 rng(derive_seed(cfg.seed, run));
  std::vector<PoseMeasurement> meas;
  meas.reserve(steps);
  for (std::size_t k = 0; k < steps; ++k) {
    if (options.exact_measurements) {
      meas.push_back({prep.truth[k], prep.reports[k].icrb});
    } else {
      meas.push_back(sample_measurement(prep.truth[k], prep.reports[k], rng));
    }
  }

  const std::size_t n_series = 1 + prep.filters.size();
  RunErrors out{std::vector<std::vector<double>>(n_series, std::vector<double>(steps)),
                std::vector<std::vector<double>>(n_series, std::vector<double>(steps))};
  const auto record = [&](std::size_t s, std::size_t k, const Posed& estimate) {
    out.sq_pos[s][k] = squared_norm_error(estimate, prep.truth[k]);
    out.sq_rot[s][k] = squared_rotation_error(estimate, prep.truth[k]);
  };

  for (std::size_t k = 0; k < steps; ++k) record(0, k, meas[k].pose);

  for (std::size_t f = 0; f < prep.filters.size(); ++f) {
    const std::size_t s = f + 1;
    switch (prep.filters[f]) {
      case FilterKind::kFusion:
      case FilterKind::kEskf: {
        FilterState state = state_from_measurement(meas[0]);
        record(s, 0, state.pose);
        for (std::size_t k = 1; k < steps; ++k) {
          const FilterState pred = predict(state, prep.commands[k - 1]);
          state = prep.filters[f] == FilterKind::kFusion
                      ? fusion_update(pred, meas[k], cfg.fusion).state
                      : eskf_update(pred, meas[k]);
          record(s, k, state.pose);
        }
        break;
      }
      case FilterKind::kEuler: {
        EulerState state = euler_state_from_measurement(meas[0]);
        record(s, 0, pose_from_euler_vector(state.x));
        for (std::size_t k = 1; k < steps; ++k) {
          state = euler_ekf_update(euler_predict(state, prep.commands[k - 1]), meas[k]);
          record(s, k, pose_from_euler_vector(state.x));
        }
        break;
      }
    }
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------

std::string to_string(FilterKind kind) {
  switch (kind) {
    case FilterKind::kFusion: return "fusion";
    case FilterKind::kEskf: return "eskf";
    case FilterKind::kEuler: return "euler";
  }
  return "unknown";
}

FilterSelection parse_filter_selection(const std::string& name) {
  if (name == "fusion") return FilterSelection::kFusion;
  if (name == "eskf") return FilterSelection::kEskf;
  if (name == "euler") return FilterSelection::kEuler;
  if (name == "all") return FilterSelection::kAll;
  config_error("unknown filter '" + name + "' (expected fusion, eskf, euler or all)");
}

std::vector<FilterKind> selected_filters(FilterSelection selection) {
  switch (selection) {
    case FilterSelection::kFusion: return {FilterKind::kFusion};
    case FilterSelection::kEskf: return {FilterKind::kEskf};
    case FilterSelection::kEuler: return {FilterKind::kEuler};
    case FilterSelection::kAll: return {FilterKind::kFusion, FilterKind::kEskf, FilterKind::kEuler};
  }
  return {};
}

void ScenarioConfig::validate() const {
  try {
    signal.validate();
    ue_array.validate();
    for (const auto& anchor : anchors) anchor.array.validate();
  } catch (const Error& e) {
    config_error(e.what());
  }
  if (anchors.size() < 2) config_error("at least two anchors are required");
  if (segments.empty()) config_error("trajectory needs at least one segment");
  for (const auto& seg : segments) {
    if (seg.steps < 1 || !(seg.dt > 0.0)) config_error("segments need steps >= 1 and dt_s > 0");
  }
  if (mc_runs < 1) config_error("monte_carlo.runs must be >= 1");
  if (!(sigma_rho_m >= 0.0) || !(sigma_r_rad >= 0.0)) config_error("process noise must be >= 0");
  if (!(fusion.eps_threshold > 0.0) || fusion.max_iters < 1) {
    config_error("fusion needs eps_threshold > 0 and max_iters >= 1");
  }
}

Rotationd rotation_from_ypr_deg(const Vector3d& ypr_deg) {
  return rotation_from_euler(Vector3d(ypr_deg * kDegToRad));
}

ScenarioConfig default_scenario() {
  ScenarioConfig cfg;
  const double half_wave = 0.5 * cfg.signal.wavelength_m();
  const ArrayGeometry bs_array = ArrayGeometry::upa(8, 8, half_wave);
  cfg.anchors.push_back({Vector3d(5, 0, 0), rotation_from_ypr_deg(Vector3d(0, 15, 0)), bs_array});
  cfg.anchors.push_back({Vector3d(0, 5, 0), rotation_from_ypr_deg(Vector3d(-30, 15, 0)), bs_array});
  cfg.ue_array = ArrayGeometry::upa(4, 4, half_wave);
  cfg.ue_start =
      Posed::from_rotation_position(rotation_from_ypr_deg(Vector3d(20, -30, 0)), Vector3d(-5, -5, 0));
  const double turn = -std::numbers::pi / 4.0;
  const std::vector<std::pair<Vector3d, Vector3d>> motion = {
      {Vector3d(0.5, 0, 0), Vector3d(0, 0, turn)},  {Vector3d(0, 0.5, 0), Vector3d::Zero()},
      {Vector3d(-0.5, 0, 0.5), Vector3d(0, 0, turn)}, {Vector3d(0.5, 0.5, 0), Vector3d::Zero()},
      {Vector3d(0, -0.5, 0), Vector3d(0, 0, turn)}, {Vector3d(-0.5, 0, -0.5), Vector3d(0, 0, turn)},
  };
  for (const auto& [v, w] : motion) cfg.segments.push_back({v, w, 20, 0.5});
  return cfg;
}

ScenarioConfig parse_scenario(const std::string& yaml_text) {
  YAML::Node root;
  try {
    root = YAML::Load(yaml_text);
  } catch (const YAML::Exception& e) {
    config_error(std::string("YAML parse error: ") + e.what());
  }
  ScenarioConfig cfg = default_scenario();
  if (root.IsNull()) return cfg;
  try {
    check_keys(root, "document", {"signal", "anchors", "ue", "trajectory", "tracking", "monte_carlo"});

    if (const YAML::Node sig = root["signal"]) {
      check_keys(sig, "signal",
                 {"carrier_hz", "subcarrier_spacing_hz", "bandwidth_hz", "num_subcarriers",
                  "num_transmissions", "tx_power_dbm", "noise_psd_dbm_hz", "clock_bias_s",
                  "beam_seed", "target_snr_db"});
      SignalConfig& s = cfg.signal;
      read(sig, "carrier_hz", s.carrier_hz);
      read(sig, "subcarrier_spacing_hz", s.subcarrier_spacing_hz);
      read(sig, "bandwidth_hz", s.bandwidth_hz);
      read(sig, "num_subcarriers", s.num_subcarriers);
      read(sig, "num_transmissions", s.num_transmissions);
      read(sig, "tx_power_dbm", s.tx_power_dbm);
      read(sig, "noise_psd_dbm_hz", s.noise_psd_dbm_hz);
      read(sig, "clock_bias_s", s.clock_bias_s);
      read(sig, "beam_seed", s.rng_seed);
      if (sig["target_snr_db"]) {
        double target = 0.0;
        read(sig, "target_snr_db", target);
        cfg.target_snr_db = target;
      }
    }
    const double wavelength = cfg.signal.wavelength_m();

    if (const YAML::Node anchors = root["anchors"]) {
      if (!anchors.IsSequence()) config_error("anchors must be a list");
      const ArrayGeometry fallback = ArrayGeometry::upa(8, 8, 0.5 * wavelength);
      cfg.anchors.clear();
      for (std::size_t i = 0; i < anchors.size(); ++i) {
        const std::string where = "anchors[" + std::to_string(i) + "]";
        check_keys(anchors[i], where, {"position_m", "orientation_ypr_deg", "array"});
        Vector3d position = Vector3d::Zero(), ypr = Vector3d::Zero();
        read_device(anchors[i], position, ypr);
        cfg.anchors.push_back({position, rotation_from_ypr_deg(ypr),
                               read_array(anchors[i]["array"], where + ".array", wavelength, fallback)});
      }
    }

    if (const YAML::Node ue = root["ue"]) {
      check_keys(ue, "ue", {"position_m", "orientation_ypr_deg", "array"});
      Vector3d position(-5, -5, 0), ypr(20, -30, 0);
      read_device(ue, position, ypr);
      cfg.ue_start = Posed::from_rotation_position(rotation_from_ypr_deg(ypr), position);
      cfg.ue_array = read_array(ue["array"], "ue.array", wavelength,
                                ArrayGeometry::upa(4, 4, 0.5 * wavelength));
    }

    if (const YAML::Node traj = root["trajectory"]) {
      check_keys(traj, "trajectory", {"segments"});
      const YAML::Node segs = traj["segments"];
      if (!segs || !segs.IsSequence()) config_error("trajectory.segments must be a list");
      cfg.segments.clear();
      for (std::size_t i = 0; i < segs.size(); ++i) {
        const std::string where = "trajectory.segments[" + std::to_string(i) + "]";
        check_keys(segs[i], where, {"velocity_mps", "angular_velocity_radps", "steps", "dt_s"});
        TrajectorySegment seg;
        read_vec3(segs[i], "velocity_mps", seg.v);
        read_vec3(segs[i], "angular_velocity_radps", seg.w);
        read(segs[i], "steps", seg.steps);
        read(segs[i], "dt_s", seg.dt);
        cfg.segments.push_back(seg);
      }
    }

    if (const YAML::Node tr = root["tracking"]) {
      check_keys(tr, "tracking", {"filter", "sigma_rho_m", "sigma_r_rad", "eps_threshold", "max_iters"});
      if (tr["filter"]) {
        std::string name;
        read(tr, "filter", name);
        cfg.filter = parse_filter_selection(name);
      }
      read(tr, "sigma_rho_m", cfg.sigma_rho_m);
      read(tr, "sigma_r_rad", cfg.sigma_r_rad);
      read(tr, "eps_threshold", cfg.fusion.eps_threshold);
      read(tr, "max_iters", cfg.fusion.max_iters);
    }

    if (const YAML::Node mc = root["monte_carlo"]) {
      check_keys(mc, "monte_carlo", {"runs", "seed"});
      read(mc, "runs", cfg.mc_runs);
      read(mc, "seed", cfg.seed);
    }
  } catch (const YAML::Exception& e) {
    config_error(std::string("malformed config: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

ScenarioConfig load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open config file " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario(buffer.str());
}

double start_snr_db(const ScenarioConfig& cfg) {
  const BeamSet beams = make_beams(cfg.anchors, cfg.ue_array, cfg.signal);
  return 10.0 * std::log10(mean_sample_snr(cfg.ue_start, cfg.ue_array, cfg.anchors, cfg.signal, beams));
}

ScenarioConfig with_calibrated_power(const ScenarioConfig& cfg) {
  ScenarioConfig out = cfg;
  if (cfg.target_snr_db) out.signal.tx_power_dbm += *cfg.target_snr_db - start_snr_db(cfg);
  return out;
}

// ---------------------------------------------------------------------------

std::vector<Posed> generate_trajectory(const Posed& start,
                                       const std::vector<TrajectorySegment>& segments) {
  const std::vector<MotionCommand> commands = trajectory_commands(segments, CovTangent::Zero());
  std::vector<Posed> poses;
  poses.reserve(commands.size() + 1);
  poses.push_back(start);
  for (const auto& cmd : commands) poses.push_back(motion_increment(cmd) * poses.back());
  return poses;
}

std::vector<MotionCommand> trajectory_commands(const std::vector<TrajectorySegment>& segments,
                                               const CovTangent& process_noise) {
  std::vector<MotionCommand> commands;
  for (const auto& seg : segments) {
    for (int i = 0; i < seg.steps; ++i) commands.push_back({seg.v, seg.w, seg.dt, process_noise});
  }
  // Sample 0 is the start pose, so the first command is never applied.
  if (!commands.empty()) commands.erase(commands.begin());
  return commands;
}

PoseMeasurement sample_measurement(const Posed& truth, const IcrbReport& report,
                                   std::mt19937_64& rng) {
  const CovTangent sigma = measurement_covariance(report.icrb, truth);
  const Eigen::MatrixXd factor = psd_sqrt_factor(sigma);
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector6d z;
  for (int i = 0; i < 6; ++i) z(i) = normal(rng);
  const Vector6d n = factor * z;
  return {se3_exp(n) * truth, report.icrb};
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  // splitmix64 finaliser over a (master, index) counter
  std::uint64_t z = master + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// ---------------------------------------------------------------------------

namespace {

std::vector<double> column_rmse(const std::vector<std::vector<double>>& sq) {
  if (sq.empty()) return {};
  std::vector<double> out(sq.front().size(), 0.0);
  for (const auto& run : sq) {
    for (std::size_t k = 0; k < out.size(); ++k) out[k] += run[k];
  }
  for (double& v : out) v = std::sqrt(v / static_cast<double>(sq.size()));
  return out;
}

}  // namespace

std::vector<double> FilterSeries::pos_rmse() const { return column_rmse(sq_pos_err); }
std::vector<double> FilterSeries::rot_rmse() const { return column_rmse(sq_rot_err); }

double FilterSeries::mean_rot_rmse() const {
  const std::vector<double> rmse = rot_rmse();
  if (rmse.empty()) return 0.0;
  double sum = 0.0;
  for (double v : rmse) sum += v;
  return sum / static_cast<double>(rmse.size());
}

double FilterSeries::mean_rot_rmse(const std::vector<int>& runs) const {
  if (runs.empty() || sq_rot_err.empty()) return 0.0;
  const std::size_t steps = sq_rot_err.front().size();
  double total = 0.0;
  for (std::size_t k = 0; k < steps; ++k) {
    double sum = 0.0;
    for (int r : runs) sum += sq_rot_err[r][k];
    total += std::sqrt(sum / static_cast<double>(runs.size()));
  }
  return total / static_cast<double>(steps);
}

std::vector<double> FilterSeries::terminal_rot_errors() const {
  std::vector<double> out;
  for (const auto& run : sq_rot_err) {
    if (!run.empty()) out.push_back(std::sqrt(run.back()));
  }
  std::sort(out.begin(), out.end());
  return out;
}

const FilterSeries& MetricSeries::find(const std::string& name) const {
  for (const auto& s : series) {
    if (s.name == name) return s;
  }
  throw Error(ErrorCode::kInvalidArgument, "no series named " + name);
}

MetricSeries run_monte_carlo(const ScenarioConfig& input, const MonteCarloOptions& options) {
  const ScenarioConfig cfg = with_calibrated_power(input);
  Prepared prep;
  prep.truth = generate_trajectory(cfg.ue_start, cfg.segments);
  prep.commands = trajectory_commands(
      cfg.segments, diagonal_process_noise(cfg.sigma_rho_m, cfg.sigma_r_rad));
  prep.filters = selected_filters(cfg.filter);
  const BeamSet beams = make_beams(cfg.anchors, cfg.ue_array, cfg.signal);
  prep.reports.reserve(prep.truth.size());
  for (const auto& pose : prep.truth) {
    prep.reports.push_back(compute_icrb(pose, cfg.ue_array, cfg.anchors, cfg.signal, beams));
  }

  const int runs = cfg.mc_runs;
  std::vector<std::optional<RunErrors>> results(runs);
  const auto work = [&](int first, int stride) {
    for (int r = first; r < runs; r += stride) {
      try {
        results[r] = run_single(cfg, prep, static_cast<std::uint64_t>(r), options);
      } catch (const Error&) {
        results[r].reset();
      }
    }
  };
  const int workers = std::clamp(options.workers, 1, runs);
  if (workers == 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work, w, workers);
    for (auto& t : pool) t.join();
  }

  MetricSeries metrics;
  metrics.runs_requested = runs;
  metrics.time_s.push_back(0.0);
  for (const auto& cmd : prep.commands) metrics.time_s.push_back(metrics.time_s.back() + cmd.dt);
  metrics.series.push_back({"meas", {}, {}});
  for (FilterKind kind : prep.filters) metrics.series.push_back({to_string(kind), {}, {}});
  for (auto& result : results) {
    if (!result) {
      ++metrics.failed_runs;
      continue;
    }
    for (std::size_t s = 0; s < metrics.series.size(); ++s) {
      metrics.series[s].sq_pos_err.push_back(std::move(result->sq_pos[s]));
      metrics.series[s].sq_rot_err.push_back(std::move(result->sq_rot[s]));
    }
  }
  return metrics;
}

double bootstrap_ordering_confidence(const FilterSeries& a, const FilterSeries& b, int resamples,
                                     std::uint64_t seed) {
  const int runs = static_cast<int>(a.sq_rot_err.size());
  if (runs == 0 || runs != static_cast<int>(b.sq_rot_err.size())) {
    throw Error(ErrorCode::kLengthMismatch, "bootstrap series have different run counts");
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(0, runs - 1);
  std::vector<int> sample(runs);
  int wins = 0;
  for (int i = 0; i < resamples; ++i) {
    for (int& s : sample) s = pick(rng);
    if (a.mean_rot_rmse(sample) <= b.mean_rot_rmse(sample)) ++wins;
  }
  return static_cast<double>(wins) / static_cast<double>(resamples);
}

// ---------------------------------------------------------------------------

std::vector<BoundsRow> bounds_sweep(const ScenarioConfig& cfg, const std::vector<double>& powers_dbm) {
  if (powers_dbm.empty()) throw Error(ErrorCode::kInvalidArgument, "power list is empty");
  const BeamSet beams = make_beams(cfg.anchors, cfg.ue_array, cfg.signal);
  std::vector<BoundsRow> rows;
  for (double power : powers_dbm) {
    SignalConfig sig = cfg.signal;
    sig.tx_power_dbm = power;
    BoundsRow row;
    row.power_dbm = power;
    try {
      const IcrbReport report = compute_icrb(cfg.ue_start, cfg.ue_array, cfg.anchors, sig, beams);
      row.peb_m = report.peb_m;
      row.rmeb_rad = report.rmeb_rad;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kUnobservableState) throw;
      row.observable = false;
      row.peb_m = std::numeric_limits<double>::quiet_NaN();
      row.rmeb_rad = std::numeric_limits<double>::quiet_NaN();
    }
    rows.push_back(row);
  }
  return rows;
}

// ---------------------------------------------------------------------------

std::string format_double(double value) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, end);
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIoError, "cannot open " + path + " for writing");
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_double(row[i]);
    out << "\n";
  }
  if (!out) throw Error(ErrorCode::kIoError, "failed writing " + path);
}

void write_bounds_csv(const std::string& path, const std::vector<BoundsRow>& rows) {
  std::vector<std::vector<double>> data;
  for (const auto& row : rows) data.push_back({row.power_dbm, row.peb_m, row.rmeb_rad});
  write_csv(path, {"power_dbm", "peb_m", "rmeb_rad"}, data);
}

void write_rmse_csv(const std::string& path, const MetricSeries& metrics) {
  std::vector<std::string> header = {"step", "time_s"};
  std::vector<std::vector<double>> pos, rot;
  for (const auto& s : metrics.series) {
    header.push_back("pos_rmse_m_" + s.name);
    header.push_back("rot_rmse_rad_" + s.name);
    pos.push_back(s.pos_rmse());
    rot.push_back(s.rot_rmse());
  }
  std::vector<std::vector<double>> data;
  const bool any_runs = !metrics.series.empty() && !metrics.series.front().sq_rot_err.empty();
  if (any_runs) {
    for (std::size_t k = 0; k < metrics.time_s.size(); ++k) {
      std::vector<double> row = {static_cast<double>(k), metrics.time_s[k]};
      for (std::size_t s = 0; s < metrics.series.size(); ++s) {
        row.push_back(pos[s][k]);
        row.push_back(rot[s][k]);
      }
      data.push_back(std::move(row));
    }
  }
  write_csv(path, header, data);
}

void write_cdf_csv(const std::string& path, const FilterSeries& series) {
  const std::vector<double> errors = series.terminal_rot_errors();
  std::vector<std::vector<double>> data;
  for (std::size_t i = 0; i < errors.size(); ++i) {
    data.push_back({errors[i], static_cast<double>(i + 1) / static_cast<double>(errors.size())});
  }
  write_csv(path, {"error_rad", "cdf"}, data);
}

}  // namespace liepose
