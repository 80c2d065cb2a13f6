#pragma once

// LOS MIMO-OFDM channel geometry: direction vectors, delays, steering
// vectors, the noise-free received signal and its unconstrained Fisher
// information.

#include <Eigen/Core>

#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include "liepose/lie.hpp"

namespace liepose {

inline constexpr double kSpeedOfLight = 299792458.0;

using Complex = std::complex<double>;

struct ArrayGeometry {
  /// Element positions in the device frame, centroid at the origin (m).
  std::vector<Vector3d> elements;

  /// Uniform planar array in the local x-y plane.
  static ArrayGeometry upa(int rows, int cols, double spacing_m);
  static ArrayGeometry single_element();

  [[nodiscard]] int size() const { return static_cast<int>(elements.size()); }
  /// Throws InvalidArgument unless non-empty with centroid within 1e-12 of 0.
  void validate() const;
};

struct AnchorConfig {
  Vector3d position = Vector3d::Zero();
  Rotationd orientation;
  ArrayGeometry array;
};

struct SignalConfig {
  double carrier_hz = 30e9;
  double subcarrier_spacing_hz = 120e3;
  /// Receiver noise bandwidth; the per-sample noise power is N0 * bandwidth.
  double bandwidth_hz = 100e6;
  int num_subcarriers = 100;
  int num_transmissions = 20;
  double tx_power_dbm = 20.0;
  double noise_psd_dbm_hz = -173.855;
  double clock_bias_s = 0.0;
  std::uint64_t rng_seed = 1;

  [[nodiscard]] double wavelength_m() const { return kSpeedOfLight / carrier_hz; }
  /// |x|^2 = P / C (W).
  [[nodiscard]] double symbol_power_w() const;
  /// sigma^2 = N0 * bandwidth (W).
  [[nodiscard]] double noise_variance_w() const;
  void validate() const;
};

/// Geometric channel observables for one anchor-UE link.
struct LinkParams {
  double delay_s = 0.0;
  Vector3d dir_ue = Vector3d::UnitX();  ///< t_UB, UE frame
  Vector3d dir_bs = Vector3d::UnitX();  ///< t_BU, anchor frame
  Complex gain{0.0, 0.0};
};

using ChannelParams = std::vector<LinkParams>;

/// Unit-norm precoders (anchor side) and combiners (UE side) for every
/// (anchor, transmission) pair.
struct BeamSet {
  std::vector<std::vector<Eigen::VectorXcd>> precoders;  ///< [anchor][g], size N_B
  std::vector<std::vector<Eigen::VectorXcd>> combiners;  ///< [anchor][g], size N_U
};

/// Parameter layout of the unconstrained FIM.
///  kPerAnchor: per anchor [tau, t_UB(3), t_BU(3), Re a, Im a]
///  kGrouped:   [all tau; all (t_UB, t_BU); all (Re a, Im a)]
enum class ParamLayout { kPerAnchor, kGrouped };

inline constexpr int kLinkParams = 9;

/// Direction pair (dir_bs, dir_ue). dir_bs = R_B^T u, dir_ue = -R_U^T u with
/// u the unit vector from the anchor to the UE.
[[nodiscard]] std::pair<Vector3d, Vector3d> direction_vectors(const Posed& ue,
                                                              const AnchorConfig& anchor);

[[nodiscard]] double delay(const Posed& ue, const AnchorConfig& anchor, double clock_bias_s);

[[nodiscard]] Eigen::VectorXcd steering_vector(const ArrayGeometry& array, const Vector3d& dir,
                                               double carrier_hz);

/// Free-space LOS gain lambda / (4 pi d) * exp(-j 2 pi d / lambda).
[[nodiscard]] Complex free_space_gain(double distance_m, double carrier_hz);

[[nodiscard]] ChannelParams channel_params(const Posed& ue, const std::vector<AnchorConfig>& anchors,
                                           const SignalConfig& sig);

/// Complex Gaussian unit-norm beams drawn from sig.rng_seed.
[[nodiscard]] BeamSet make_beams(const std::vector<AnchorConfig>& anchors,
                                 const ArrayGeometry& ue_array, const SignalConfig& sig);

/// mu[anchor] is a G x C matrix (transmission, subcarrier).
[[nodiscard]] std::vector<Eigen::MatrixXcd> noise_free_signal(
    const Posed& ue, const ArrayGeometry& ue_array, const std::vector<AnchorConfig>& anchors,
    const SignalConfig& sig, const BeamSet& beams);

/// Same as above, evaluated directly from channel parameters.
[[nodiscard]] std::vector<Eigen::MatrixXcd> noise_free_signal(
    const ChannelParams& params, const ArrayGeometry& ue_array,
    const std::vector<AnchorConfig>& anchors, const SignalConfig& sig, const BeamSet& beams);

/// d mu / d eta for one link, rows ordered g * C + c, columns in the
/// per-anchor parameter order.
[[nodiscard]] Eigen::MatrixXcd signal_jacobian(const LinkParams& link, const ArrayGeometry& ue_array,
                                               const AnchorConfig& anchor, const SignalConfig& sig,
                                               const BeamSet& beams, int anchor_index);

/// (2 / sigma^2) Re{ J^H J } over all links; 9N x 9N.
[[nodiscard]] Eigen::MatrixXd fim_unconstrained(const Posed& ue, const ArrayGeometry& ue_array,
                                                const std::vector<AnchorConfig>& anchors,
                                                const SignalConfig& sig, const BeamSet& beams,
                                                ParamLayout layout = ParamLayout::kPerAnchor);

/// Permutation p with grouped[i] = per_anchor[p[i]].
[[nodiscard]] std::vector<int> grouped_layout_order(int num_anchors);

/// Mean |mu|^2 / sigma^2 over anchors, transmissions and subcarriers.
[[nodiscard]] double mean_sample_snr(const Posed& ue, const ArrayGeometry& ue_array,
                                     const std::vector<AnchorConfig>& anchors,
                                     const SignalConfig& sig, const BeamSet& beams);

// ---------------------------------------------------------------------------
// Angle parametrization
// ---------------------------------------------------------------------------

/// (azimuth, elevation) = (atan2(t2, t1), asin(t3)).
[[nodiscard]] Eigen::Vector2d direction_to_angles(const Vector3d& dir);
[[nodiscard]] Vector3d angles_to_direction(const Eigen::Vector2d& angles);

/// d(az, el) / dt on the unconstrained extension.
[[nodiscard]] Eigen::Matrix<double, 2, 3> angle_jacobian(const Vector3d& dir);

/// Per-anchor FIM over [tau, az_BS, el_BS, az_UE, el_UE, Re a, Im a].
using AngleFim = Eigen::Matrix<double, 7, 7>;

[[nodiscard]] std::vector<AngleFim> fim_angles(const Posed& ue, const ArrayGeometry& ue_array,
                                               const std::vector<AnchorConfig>& anchors,
                                               const SignalConfig& sig, const BeamSet& beams);

/// J_t^T F_angles J_t for one direction vector; rank <= 2.
[[nodiscard]] Matrix3d fim_direction_from_angles(const Eigen::Matrix2d& angle_fim,
                                                 const Vector3d& dir);

}  // namespace liepose
