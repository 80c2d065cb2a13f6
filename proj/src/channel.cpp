#include "liepose/channel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <tuple>

#include "liepose/linalg.hpp"

namespace liepose {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr Complex kJ{0.0, 1.0};

double dbm_to_watt(double dbm) { return std::pow(10.0, dbm / 10.0) * 1e-3; }

Eigen::VectorXcd random_unit_vector(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXcd v(n);
  for (int i = 0; i < n; ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    v(i) = Complex(re, im);
  }
  return v / v.norm();
}

// Gradient of sum_d b_d a_d(t) with respect to t: sum_d b_d (j k p_d) a_d.
Eigen::Vector3cd beam_response_gradient(const ArrayGeometry& array, const Eigen::VectorXcd& a,
                                        const Eigen::VectorXcd& beam, double wavenumber) {
  Eigen::Vector3cd grad = Eigen::Vector3cd::Zero();
  for (int d = 0; d < array.size(); ++d) {
    grad += (beam(d) * a(d) * kJ * wavenumber) * array.elements[d].cast<Complex>();
  }
  return grad;
}

Eigen::Matrix<double, 3, 2> direction_angle_derivative(const Vector3d& dir) {
  const Eigen::Vector2d ang = direction_to_angles(dir);
  const double ca = std::cos(ang(0)), sa = std::sin(ang(0));
  const double ce = std::cos(ang(1)), se = std::sin(ang(1));
  Eigen::Matrix<double, 3, 2> d;
  // clang-format off
  d << -ce * sa, -se * ca,
        ce * ca, -se * sa,
        0.0,      ce;
  // clang-format on
  return d;
}

}  // namespace

// ---------------------------------------------------------------------------

ArrayGeometry ArrayGeometry::upa(int rows, int cols, double spacing_m) {
  ArrayGeometry array;
  array.elements.reserve(static_cast<std::size_t>(rows) * cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      array.elements.emplace_back((i - 0.5 * (rows - 1)) * spacing_m,
                                  (j - 0.5 * (cols - 1)) * spacing_m, 0.0);
    }
  }
  return array;
}

ArrayGeometry ArrayGeometry::single_element() {
  ArrayGeometry array;
  array.elements.emplace_back(Vector3d::Zero());
  return array;
}

void ArrayGeometry::validate() const {
  if (elements.empty()) throw Error(ErrorCode::kInvalidArgument, "array has no elements");
  Vector3d centroid = Vector3d::Zero();
  for (const auto& e : elements) centroid += e;
  centroid /= static_cast<double>(elements.size());
  if (centroid.norm() > 1e-12) {
    throw Error(ErrorCode::kInvalidArgument, "array centroid is not at the origin");
  }
}

double SignalConfig::symbol_power_w() const {
  return dbm_to_watt(tx_power_dbm) / static_cast<double>(num_subcarriers);
}

double SignalConfig::noise_variance_w() const {
  return dbm_to_watt(noise_psd_dbm_hz) * bandwidth_hz;
}

void SignalConfig::validate() const {
  if (!(carrier_hz > 0.0) || !(subcarrier_spacing_hz > 0.0) || !(bandwidth_hz > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "signal frequencies must be positive");
  }
  if (num_subcarriers < 2) {
    throw Error(ErrorCode::kInvalidArgument, "at least two subcarriers are needed");
  }
  if (num_transmissions < 1) {
    throw Error(ErrorCode::kInvalidArgument, "at least one transmission is needed");
  }
  if (!std::isfinite(tx_power_dbm) || !std::isfinite(noise_psd_dbm_hz) ||
      !std::isfinite(clock_bias_s)) {
    throw Error(ErrorCode::kInvalidArgument, "signal power levels must be finite");
  }
}

// ---------------------------------------------------------------------------

std::pair<Vector3d, Vector3d> direction_vectors(const Posed& ue, const AnchorConfig& anchor) {
  const Vector3d diff = ue.position() - anchor.position;
  const double dist = diff.norm();
  if (dist <= 1e-6) {
    throw Error(ErrorCode::kCoincidentPositions, "UE and anchor positions coincide");
  }
  const Vector3d u = diff / dist;
  return {anchor.orientation.matrix().transpose() * u,
          -(ue.rotation().matrix().transpose() * u)};
}

double delay(const Posed& ue, const AnchorConfig& anchor, double clock_bias_s) {
  const double dist = (ue.position() - anchor.position).norm();
  if (dist <= 1e-6) {
    throw Error(ErrorCode::kCoincidentPositions, "UE and anchor positions coincide");
  }
  return dist / kSpeedOfLight + clock_bias_s;
}

Eigen::VectorXcd steering_vector(const ArrayGeometry& array, const Vector3d& dir,
                                 double carrier_hz) {
  const double wavenumber = kTwoPi * carrier_hz / kSpeedOfLight;
  Eigen::VectorXcd a(array.size());
  for (int d = 0; d < array.size(); ++d) {
    a(d) = std::exp(kJ * (wavenumber * array.elements[d].dot(dir)));
  }
  return a;
}

Complex free_space_gain(double distance_m, double carrier_hz) {
  const double lambda = kSpeedOfLight / carrier_hz;
  return lambda / (4.0 * std::numbers::pi * distance_m) *
         std::exp(-kJ * (kTwoPi * distance_m / lambda));
}

ChannelParams channel_params(const Posed& ue, const std::vector<AnchorConfig>& anchors,
                             const SignalConfig& sig) {
  ChannelParams params;
  params.reserve(anchors.size());
  for (const auto& anchor : anchors) {
    LinkParams link;
    std::tie(link.dir_bs, link.dir_ue) = direction_vectors(ue, anchor);
    link.delay_s = delay(ue, anchor, sig.clock_bias_s);
    link.gain = free_space_gain((ue.position() - anchor.position).norm(), sig.carrier_hz);
    params.push_back(link);
  }
  return params;
}

BeamSet make_beams(const std::vector<AnchorConfig>& anchors, const ArrayGeometry& ue_array,
                   const SignalConfig& sig) {
  std::mt19937_64 rng(sig.rng_seed);
  BeamSet beams;
  beams.precoders.resize(anchors.size());
  beams.combiners.resize(anchors.size());
  for (std::size_t n = 0; n < anchors.size(); ++n) {
    for (int g = 0; g < sig.num_transmissions; ++g) {
      beams.precoders[n].push_back(random_unit_vector(anchors[n].array.size(), rng));
      beams.combiners[n].push_back(random_unit_vector(ue_array.size(), rng));
    }
  }
  return beams;
}

std::vector<Eigen::MatrixXcd> noise_free_signal(const ChannelParams& params,
                                                const ArrayGeometry& ue_array,
                                                const std::vector<AnchorConfig>& anchors,
                                                const SignalConfig& sig, const BeamSet& beams) {
  const double x = std::sqrt(sig.symbol_power_w());
  std::vector<Eigen::MatrixXcd> out;
  out.reserve(anchors.size());
  for (std::size_t n = 0; n < anchors.size(); ++n) {
    const LinkParams& link = params[n];
    const Eigen::VectorXcd a_ue = steering_vector(ue_array, link.dir_ue, sig.carrier_hz);
    const Eigen::VectorXcd a_bs = steering_vector(anchors[n].array, link.dir_bs, sig.carrier_hz);
    Eigen::MatrixXcd mu(sig.num_transmissions, sig.num_subcarriers);
    for (int g = 0; g < sig.num_transmissions; ++g) {
      const Complex beam_gain = beams.combiners[n][g].transpose() * a_ue;
      const Complex array_gain = a_bs.transpose() * beams.precoders[n][g];
      for (int c = 0; c < sig.num_subcarriers; ++c) {
        const Complex phase = std::exp(-kJ * (kTwoPi * link.delay_s * c * sig.subcarrier_spacing_hz));
        mu(g, c) = link.gain * beam_gain * array_gain * phase * x;
      }
    }
    out.push_back(std::move(mu));
  }
  return out;
}

std::vector<Eigen::MatrixXcd> noise_free_signal(const Posed& ue, const ArrayGeometry& ue_array,
                                                const std::vector<AnchorConfig>& anchors,
                                                const SignalConfig& sig, const BeamSet& beams) {
  return noise_free_signal(channel_params(ue, anchors, sig), ue_array, anchors, sig, beams);
}

Eigen::MatrixXcd signal_jacobian(const LinkParams& link, const ArrayGeometry& ue_array,
                                 const AnchorConfig& anchor, const SignalConfig& sig,
                                 const BeamSet& beams, int anchor_index) {
  const double wavenumber = kTwoPi * sig.carrier_hz / kSpeedOfLight;
  const double x = std::sqrt(sig.symbol_power_w());
  const Eigen::VectorXcd a_ue = steering_vector(ue_array, link.dir_ue, sig.carrier_hz);
  const Eigen::VectorXcd a_bs = steering_vector(anchor.array, link.dir_bs, sig.carrier_hz);

  const int rows = sig.num_transmissions * sig.num_subcarriers;
  Eigen::MatrixXcd jac(rows, kLinkParams);
  for (int g = 0; g < sig.num_transmissions; ++g) {
    const Eigen::VectorXcd& combiner = beams.combiners[anchor_index][g];
    const Eigen::VectorXcd& precoder = beams.precoders[anchor_index][g];
    const Complex ue_gain = combiner.transpose() * a_ue;
    const Complex bs_gain = a_bs.transpose() * precoder;
    const Eigen::Vector3cd d_ue = beam_response_gradient(ue_array, a_ue, combiner, wavenumber);
    const Eigen::Vector3cd d_bs = beam_response_gradient(anchor.array, a_bs, precoder, wavenumber);
    for (int c = 0; c < sig.num_subcarriers; ++c) {
      const double omega = kTwoPi * c * sig.subcarrier_spacing_hz;
      const Complex carrier = std::exp(-kJ * (omega * link.delay_s)) * x;
      const Complex without_gain = ue_gain * bs_gain * carrier;
      const int row = g * sig.num_subcarriers + c;
      jac(row, 0) = link.gain * without_gain * (-kJ * omega);
      jac.block<1, 3>(row, 1) = (link.gain * bs_gain * carrier) * d_ue.transpose();
      jac.block<1, 3>(row, 4) = (link.gain * ue_gain * carrier) * d_bs.transpose();
      jac(row, 7) = without_gain;
      jac(row, 8) = kJ * without_gain;
    }
  }
  return jac;
}

std::vector<int> grouped_layout_order(int num_anchors) {
  std::vector<int> order;
  order.reserve(static_cast<std::size_t>(kLinkParams) * num_anchors);
  for (int n = 0; n < num_anchors; ++n) order.push_back(kLinkParams * n);
  for (int n = 0; n < num_anchors; ++n) {
    for (int k = 1; k <= 6; ++k) order.push_back(kLinkParams * n + k);
  }
  for (int n = 0; n < num_anchors; ++n) {
    order.push_back(kLinkParams * n + 7);
    order.push_back(kLinkParams * n + 8);
  }
  return order;
}

Eigen::MatrixXd fim_unconstrained(const Posed& ue, const ArrayGeometry& ue_array,
                                  const std::vector<AnchorConfig>& anchors,
                                  const SignalConfig& sig, const BeamSet& beams,
                                  ParamLayout layout) {
  const int n_anchors = static_cast<int>(anchors.size());
  const ChannelParams params = channel_params(ue, anchors, sig);
  const double scale = 2.0 / sig.noise_variance_w();

  // Anchors transmit orthogonally, so the FIM is block diagonal per anchor.
  Eigen::MatrixXd fim = Eigen::MatrixXd::Zero(kLinkParams * n_anchors, kLinkParams * n_anchors);
  for (int n = 0; n < n_anchors; ++n) {
    const Eigen::MatrixXcd jac = signal_jacobian(params[n], ue_array, anchors[n], sig, beams, n);
    fim.block(kLinkParams * n, kLinkParams * n, kLinkParams, kLinkParams) =
        scale * (jac.adjoint() * jac).real();
  }
  fim = symmetrized(fim);
  if (layout == ParamLayout::kPerAnchor) return fim;

  const std::vector<int> order = grouped_layout_order(n_anchors);
  Eigen::MatrixXd grouped(fim.rows(), fim.cols());
  for (int i = 0; i < fim.rows(); ++i) {
    for (int j = 0; j < fim.cols(); ++j) grouped(i, j) = fim(order[i], order[j]);
  }
  return grouped;
}

double mean_sample_snr(const Posed& ue, const ArrayGeometry& ue_array,
                       const std::vector<AnchorConfig>& anchors, const SignalConfig& sig,
                       const BeamSet& beams) {
  const auto mu = noise_free_signal(ue, ue_array, anchors, sig, beams);
  double power = 0.0;
  Eigen::Index count = 0;
  for (const auto& m : mu) {
    power += m.cwiseAbs2().sum();
    count += m.size();
  }
  return power / static_cast<double>(count) / sig.noise_variance_w();
}

// ---------------------------------------------------------------------------

Eigen::Vector2d direction_to_angles(const Vector3d& dir) {
  return {std::atan2(dir(1), dir(0)), std::asin(std::clamp(dir(2), -1.0, 1.0))};
}

Vector3d angles_to_direction(const Eigen::Vector2d& angles) {
  const double ce = std::cos(angles(1));
  return {ce * std::cos(angles(0)), ce * std::sin(angles(0)), std::sin(angles(1))};
}

Eigen::Matrix<double, 2, 3> angle_jacobian(const Vector3d& dir) {
  const double planar = dir(0) * dir(0) + dir(1) * dir(1);
  if (planar <= 1e-12 || std::abs(dir(2)) >= 1.0 - 1e-12) {
    throw Error(ErrorCode::kPolarSingularity, "direction vector is at a pole");
  }
  Eigen::Matrix<double, 2, 3> jac;
  // clang-format off
  jac << -dir(1) / planar, dir(0) / planar, 0.0,
          0.0,             0.0,             1.0 / std::sqrt(1.0 - dir(2) * dir(2));
  // clang-format on
  return jac;
}

std::vector<AngleFim> fim_angles(const Posed& ue, const ArrayGeometry& ue_array,
                                 const std::vector<AnchorConfig>& anchors,
                                 const SignalConfig& sig, const BeamSet& beams) {
  const ChannelParams params = channel_params(ue, anchors, sig);
  const double scale = 2.0 / sig.noise_variance_w();
  std::vector<AngleFim> out;
  for (std::size_t n = 0; n < anchors.size(); ++n) {
    const Eigen::MatrixXcd jac =
        signal_jacobian(params[n], ue_array, anchors[n], sig, beams, static_cast<int>(n));
    // eta (9) -> gamma (7): [tau, az_BS, el_BS, az_UE, el_UE, Re, Im]
    Eigen::Matrix<double, kLinkParams, 7> chain = Eigen::Matrix<double, kLinkParams, 7>::Zero();
    chain(0, 0) = 1.0;
    chain.block<3, 2>(4, 1) = direction_angle_derivative(params[n].dir_bs);
    chain.block<3, 2>(1, 3) = direction_angle_derivative(params[n].dir_ue);
    chain(7, 5) = 1.0;
    chain(8, 6) = 1.0;
    const Eigen::MatrixXcd jac_angles = jac * chain.cast<Complex>();
    out.push_back(symmetrized(AngleFim(scale * (jac_angles.adjoint() * jac_angles).real())));
  }
  return out;
}

Matrix3d fim_direction_from_angles(const Eigen::Matrix2d& angle_fim, const Vector3d& dir) {
  const Eigen::Matrix<double, 2, 3> jac = angle_jacobian(dir);
  return symmetrized(Matrix3d(jac.transpose() * angle_fim * jac));
}

}  // namespace liepose
