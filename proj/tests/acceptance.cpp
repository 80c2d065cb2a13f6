// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "liepose/bounds.hpp"
#include "liepose/channel.hpp"
#include "liepose/lie.hpp"
#include "liepose/simkit.hpp"
#include "liepose/tracking.hpp"
#include "oracles.hpp"

using namespace liepose;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

Outcome lie_core_oracles() {
  std::mt19937_64 rng(101);
  double round_trip = 0.0, series = 0.0, adjoint_err = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const Vector3d r = oracle::random_axis_angle(rng, 3.1);
    round_trip = std::max(round_trip, (so3_log(so3_exp(r)) - r).norm());
    series = std::max(series, (so3_exp(r).matrix() - oracle::expm_series(hat3(r), 30)).norm());

    const Posed t = oracle::random_pose(rng);
    Vector6d xi;
    xi.head<3>() = oracle::random_axis_angle(rng, 2.0);
    xi.tail<3>() = oracle::random_axis_angle(rng, 2.0);
    const Matrix4d lhs = t.matrix() * se3_hat(xi) * t.inverse().matrix();
    adjoint_err = std::max(adjoint_err, (lhs - se3_hat(Vector6d(adjoint(t) * xi))).norm());

    const Vector6d g = se3_log(t);
    round_trip = std::max(round_trip, (se3_exp(g).matrix() - t.matrix()).norm());
  }
  Outcome o;
  o.pass = round_trip < 1e-9 && series < 1e-12 && adjoint_err < 1e-10;
  o.detail = "round-trip " + fmt(round_trip) + ", series " + fmt(series) + ", adjoint " + fmt(adjoint_err);
  return o;
}

Eigen::VectorXd reduced_observables(const Posed& ue, const std::vector<AnchorConfig>& anchors,
                                    const ChannelParams& reference) {
  Eigen::VectorXd z(kReducedLinkParams * anchors.size());
  for (std::size_t n = 0; n < anchors.size(); ++n) {
    const auto [bs, u] = direction_vectors(ue, anchors[n]);
    z(5 * n) = delay(ue, anchors[n], 0.0);
    z.segment<2>(5 * n + 1) = tangent_basis(reference[n].dir_ue) * u;
    z.segment<2>(5 * n + 3) = tangent_basis(reference[n].dir_bs) * bs;
  }
  return z;
}

LinkParams perturb(LinkParams link, int index, double delta) {
  if (index == 0) link.delay_s += delta;
  else if (index < 4) link.dir_ue(index - 1) += delta;
  else if (index < 7) link.dir_bs(index - 4) += delta;
  else if (index == 7) link.gain += Complex(delta, 0.0);
  else link.gain += Complex(0.0, delta);
  return link;
}

Eigen::MatrixXcd link_signal(const LinkParams& link, const ScenarioConfig& cfg, const BeamSet& beams, int n) {
  BeamSet one;
  one.precoders = {beams.precoders[n]};
  one.combiners = {beams.combiners[n]};
  return noise_free_signal(ChannelParams{link}, cfg.ue_array, {cfg.anchors[n]}, cfg.signal, one)[0];
}

Outcome jacobian_suite() {
  const ScenarioConfig cfg = default_scenario();
  const BeamSet beams = make_beams(cfg.anchors, cfg.ue_array, cfg.signal);
  std::mt19937_64 rng(202);
  std::uniform_real_distribution<double> u(-4.0, 4.0);
  std::normal_distribution<double> g;
  double dp = 0.0, angle = 0.0, tz_err = 0.0, signal = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    // d(J_l(r) rho)/dr
    const Vector3d rho(g(rng), g(rng), g(rng));
    const Vector3d r = oracle::random_axis_angle(rng, 3.0);
    const auto p_of_r = [&](const Eigen::VectorXd& v) -> Eigen::VectorXd {
      return so3_left_jacobian(Vector3d(v)) * rho;
    };
    dp = std::max(dp, oracle::relative_error(translation_jacobian_wrt_rotation(rho, r),
                                             oracle::numeric_jacobian(p_of_r, r, 1e-6)));

    // azimuth/elevation
    const Vector3d t = oracle::random_unit(rng);
    const auto angles = [](const Eigen::VectorXd& v) -> Eigen::VectorXd {
      return Eigen::Vector2d(std::atan2(v(1), v(0)), std::asin(v(2)));
    };
    angle = std::max(angle, oracle::relative_error(angle_jacobian(t), oracle::numeric_jacobian(angles, t, 1e-7)));

    // T_z
    const Posed ue = Posed::from_rotation_position(so3_exp(oracle::random_axis_angle(rng, 3.0)),
                                                   Vector3d(u(rng), u(rng), u(rng)));
    const ChannelParams ref = channel_params(ue, cfg.anchors, cfg.signal);
    const Eigen::MatrixXd tz = state_jacobian_tz(ue, cfg.anchors);
    const auto z_of_x = [&](const Eigen::VectorXd& x) -> Eigen::VectorXd {
      const Rotationd rot = so3_exp(Vector3d(x.tail<3>())) * ue.rotation();
      return reduced_observables(Posed::from_rotation_position(rot, ue.position() + x.head<3>()), cfg.anchors, ref);
    };
    const Eigen::MatrixXd fd_tz = oracle::numeric_jacobian(z_of_x, Eigen::VectorXd::Zero(6), 1e-6);
    for (int n = 0; n < 2; ++n) {
      tz_err = std::max(tz_err, oracle::relative_error(tz.row(5 * n), fd_tz.row(5 * n)));
      tz_err = std::max(tz_err, oracle::relative_error(tz.middleRows(5 * n + 1, 4), fd_tz.middleRows(5 * n + 1, 4)));
    }

    // d mu / d eta
    for (int n = 0; n < 2; ++n) {
      const Eigen::MatrixXcd jac = signal_jacobian(ref[n], cfg.ue_array, cfg.anchors[n], cfg.signal, beams, n);
      const double gain = std::abs(ref[n].gain);
      const double steps[kLinkParams] = {1e-13, 1e-6, 1e-6, 1e-6, 1e-6, 1e-6, 1e-6, 1e-6 * gain, 1e-6 * gain};
      for (int k = 0; k < kLinkParams; ++k) {
        if (k == 3 || k == 6) continue;  // planar arrays: the z components do not enter
        const Eigen::MatrixXcd fd = (link_signal(perturb(ref[n], k, steps[k]), cfg, beams, n) -
                                     link_signal(perturb(ref[n], k, -steps[k]), cfg, beams, n)) /
                                    (2.0 * steps[k]);
        const Eigen::Map<const Eigen::VectorXcd> flat(fd.data(), fd.size());
        Eigen::VectorXcd col(fd.size());
        for (int gi = 0; gi < fd.rows(); ++gi) {
          for (int c = 0; c < fd.cols(); ++c) col(c * fd.rows() + gi) = jac(gi * fd.cols() + c, k);
        }
        signal = std::max(signal, (col - flat).norm() / flat.norm());
      }
    }
  }
  Outcome o;
  o.pass = dp < 1e-4 && angle < 1e-4 && tz_err < 1e-4 && signal < 1e-4;
  o.detail = "dp/dr " + fmt(dp) + ", angles " + fmt(angle) + ", T_z " + fmt(tz_err) + ", signal " + fmt(signal);
  return o;
}

Outcome power_scaling() {
  std::vector<double> powers;
  for (int p = -20; p <= 20; p += 5) powers.push_back(p);
  const auto rows = bounds_sweep(default_scenario(), powers);
  const double peb_ref = rows.front().peb_m * std::pow(10.0, rows.front().power_dbm / 20.0);
  const double rmeb_ref = rows.front().rmeb_rad * std::pow(10.0, rows.front().power_dbm / 20.0);
  double worst = 0.0;
  bool observable = true;
  for (const auto& row : rows) {
    observable = observable && row.observable;
    const double scale = std::pow(10.0, row.power_dbm / 20.0);
    worst = std::max(worst, std::abs(row.peb_m * scale / peb_ref - 1.0));
    worst = std::max(worst, std::abs(row.rmeb_rad * scale / rmeb_ref - 1.0));
  }
  Outcome o;
  o.pass = observable && worst < 1e-6;
  o.detail = "max deviation from 10^(-P/20) " + fmt(worst) + ", PEB " + fmt(rows.front().peb_m) + " -> " +
             fmt(rows.back().peb_m) + " m";
  return o;
}

Outcome magnitudes() {
  const auto rows = bounds_sweep(default_scenario(), {20.0});
  const double peb = rows[0].peb_m, rmeb = rows[0].rmeb_rad;
  Outcome o;
  o.pass = peb >= 0.031 && peb <= 0.124 && rmeb >= 0.0067 && rmeb <= 0.0267;
  o.detail = "PEB " + fmt(peb) + " m in [0.031, 0.124], RMEB " + fmt(rmeb) + " rad in [0.0067, 0.0267]";
  return o;
}

Outcome noiseless_tracking() {
  const ScenarioConfig cfg = default_scenario();
  const std::vector<Posed> truth = generate_trajectory(cfg.ue_start, cfg.segments);
  const auto commands = trajectory_commands(cfg.segments, diagonal_process_noise(cfg.sigma_rho_m, cfg.sigma_r_rad));
  const BeamSet beams = make_beams(cfg.anchors, cfg.ue_array, cfg.signal);
  FilterState f, e;
  double pose_err = 0.0, ortho = 0.0;
  for (std::size_t k = 0; k < truth.size(); ++k) {
    const IcrbReport report = compute_icrb(truth[k], cfg.ue_array, cfg.anchors, cfg.signal, beams);
    const PoseMeasurement m{truth[k], report.icrb};
    if (k == 0) {
      f = state_from_measurement(m);
      e = f;
    } else {
      f = fusion_update(predict(f, commands[k - 1]), m, cfg.fusion).state;
      e = eskf_update(predict(e, commands[k - 1]), m);
    }
    for (const FilterState* s : {&f, &e}) {
      pose_err = std::max(pose_err, se3_log(s->pose * truth[k].inverse()).norm());
      ortho = std::max(ortho, s->pose.rotation().orthogonality_error());
    }
  }
  Outcome o;
  o.pass = truth.size() == 120 && pose_err < 1e-8 && ortho < 1e-10;
  o.detail = std::to_string(truth.size()) + " steps, pose error " + fmt(pose_err) + ", orthonormality " + fmt(ortho);
  return o;
}

Outcome filter_ordering() {
  const ScenarioConfig cfg = load_scenario(LIEPOSE_SOURCE_DIR "/configs/tracking_5db.yaml");
  MonteCarloOptions options;
  options.workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  const MetricSeries m = run_monte_carlo(cfg, options);
  const FilterSeries* meas = &m.find("meas");
  const FilterSeries* fusion = &m.find("fusion");
  const FilterSeries* eskf = &m.find("eskf");
  const FilterSeries* euler = &m.find("euler");
  Outcome o;
  const int resamples = 2000;
  const double c_fe = bootstrap_ordering_confidence(*fusion, *eskf, resamples, 11);
  const double c_ee = bootstrap_ordering_confidence(*eskf, *euler, resamples, 12);
  double c_meas = 1.0;
  for (const FilterSeries* s : {fusion, eskf, euler}) {
    c_meas = std::min(c_meas, bootstrap_ordering_confidence(*s, *meas, resamples, 13));
  }
  const bool order = fusion->mean_rot_rmse() <= eskf->mean_rot_rmse() &&
                     eskf->mean_rot_rmse() <= euler->mean_rot_rmse() &&
                     euler->mean_rot_rmse() < meas->mean_rot_rmse() &&
                     eskf->mean_rot_rmse() < meas->mean_rot_rmse() &&
                     fusion->mean_rot_rmse() < meas->mean_rot_rmse();
  o.pass = m.failed_runs == 0 && order && c_fe >= 0.95 && c_ee >= 0.95 && c_meas >= 0.95;
  o.detail = "rot RMSE fusion " + fmt(fusion->mean_rot_rmse()) + ", eskf " + fmt(eskf->mean_rot_rmse()) +
             ", euler " + fmt(euler->mean_rot_rmse()) + ", meas " + fmt(meas->mean_rot_rmse()) +
             "; confidence fusion<=eskf " + fmt(c_fe) + ", eskf<=euler " + fmt(c_ee) + ", filters<meas " +
             fmt(c_meas) + "; failed runs " + std::to_string(m.failed_runs);
  return o;
}

Posed yaw_pose(double theta) { return Posed::from_rotation_position(so3_exp(Vector3d(0, 0, theta)), Vector3d::Zero()); }

Outcome scalar_equivalence() {
  std::mt19937_64 rng(707);
  std::uniform_real_distribution<double> angle(-1.0, 1.0), var(1e-4, 1e-2), small(-1e-3, 1e-3);
  double blend_err = 0.0, eskf_err = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const double theta_p = angle(rng), theta_m = theta_p + 0.2 * angle(rng);
    const double var_p = var(rng), var_m = var(rng);
    Matrix6d sp = 1e-2 * Matrix6d::Identity(), sm = 1e-2 * Matrix6d::Identity();
    sp(5, 5) = var_p;
    sm(5, 5) = var_m;
    const FusionResult r = fusion_update({yaw_pose(theta_p), sp}, yaw_pose(theta_m), sm);
    const double blend = (var_p * theta_m + var_m * theta_p) / (var_p + var_m);
    blend_err = std::max(blend_err, std::abs(so3_log(r.state.pose.rotation())(2) - blend));
    blend_err = std::max(blend_err, std::abs(r.state.cov(5, 5) - var_p * var_m / (var_p + var_m)));

    const Posed meas = yaw_pose(theta_p + small(rng));
    const FilterState e = eskf_update({yaw_pose(theta_p), sp}, meas, sm);
    const FusionResult f = fusion_update({yaw_pose(theta_p), sp}, meas, sm);
    eskf_err = std::max(eskf_err, se3_log(e.pose * f.state.pose.inverse()).norm());
  }
  Outcome o;
  o.pass = blend_err < 1e-8 && eskf_err < 1e-5;
  o.detail = "blend " + fmt(blend_err) + ", eskf vs fusion " + fmt(eskf_err);
  return o;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome determinism() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / ("liepose_acceptance_" + std::to_string(std::random_device{}()));
  fs::create_directories(dir);
  const auto run = [&](const std::string& tag) {
    const std::string cmd = std::string("\"") + LIEPOSE_CLI_PATH + "\" mc --config \"" LIEPOSE_SOURCE_DIR
                            "/configs/tracking_5db.yaml\" --seed 42 --workers 4 --out-prefix \"" +
                            (dir / tag).string() + "\" > /dev/null";
    return std::system(cmd.c_str());
  };
  Outcome o;
  if (run("a") != 0 || run("b") != 0) {
    o.pass = false;
    o.detail = "mc invocation failed";
    fs::remove_all(dir);
    return o;
  }
  int files = 0, mismatched = 0;
  for (const auto& entry : fs::directory_iterator(dir)) {
    const std::string name = entry.path().filename().string();
    if (name.rfind("a_", 0) != 0) continue;
    ++files;
    const fs::path other = dir / ("b_" + name.substr(2));
    if (!fs::exists(other) || read_file(entry.path()) != read_file(other)) ++mismatched;
  }
  fs::remove_all(dir);
  o.pass = files > 0 && mismatched == 0;
  o.detail = std::to_string(files) + " CSV files compared, " + std::to_string(mismatched) + " differ";
  return o;
}

struct Criterion {
  int id;
  const char* name;
  double time_limit_s;  ///< 0 means no limit
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "lie-core oracle suite", 5.0, lie_core_oracles},
      {2, "jacobian/FIM finite-difference suite", 30.0, jacobian_suite},
      {3, "power-scaling law", 0.0, power_scaling},
      {4, "bound magnitudes at 20 dBm", 120.0, magnitudes},
      {5, "noiseless tracking", 0.0, noiseless_tracking},
      {6, "filter ordering, 100-run Monte Carlo", 600.0, filter_ordering},
      {7, "scalar-oracle filter equivalence", 0.0, scalar_equivalence},
      {8, "mc determinism", 0.0, determinism},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double elapsed = seconds_since(start);
    if (c.time_limit_s > 0.0 && elapsed >= c.time_limit_s) {
      o.pass = false;
      o.detail += "; over time limit";
    }
    if (!o.pass) ++failures;
    std::printf("%s criterion %d (%s): %s [%.2f s]\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(),
                elapsed);
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
