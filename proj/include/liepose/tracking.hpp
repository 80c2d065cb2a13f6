#pragma once

// Pose tracking on SE(3): constant-velocity prediction, iterated pose fusion,
// the error-state Kalman update and an Euler-angle EKF baseline.

#include <Eigen/Core>

#include <vector>

#include "liepose/lie.hpp"

namespace liepose {

/// Nominal pose with a covariance over the left perturbation
/// T = exp(dxi) * pose.
struct FilterState {
  Posed pose;
  CovTangent cov = CovTangent::Zero();
};

struct MotionCommand {
  Vector3d v = Vector3d::Zero();  ///< m/s, local frame
  Vector3d w = Vector3d::Zero();  ///< rad/s
  double dt = 1.0;                ///< s
  CovTangent process_noise = CovTangent::Zero();
};

struct PoseMeasurement {
  Posed pose;
  Matrix6d cov_state_icrb = Matrix6d::Zero();  ///< over [p; r]
};

/// F_k = [[exp(dt w), dt v], [0, 1]].
[[nodiscard]] Posed motion_increment(const MotionCommand& cmd);

[[nodiscard]] FilterState predict(const FilterState& state, const MotionCommand& cmd);

/// Q = diag(sigma_rho^2 I, sigma_r^2 I).
[[nodiscard]] CovTangent diagonal_process_noise(double sigma_rho_m, double sigma_r_rad);

struct FusionOptions {
  double eps_threshold = 1e-8;
  int max_iters = 50;
};

struct FusionResult {
  FilterState state;
  int iterations = 0;
  bool converged = false;  ///< false means max_iters was reached
};

/// Gauss-Newton minimisation of sum_m h_m^T S_m^-1 h_m over {measurement,
/// prediction}, h_m = log(T_m T^-1). Throws SingularNormalEquations.
[[nodiscard]] FusionResult fusion_update(const FilterState& pred, const Posed& meas_pose,
                                         const CovTangent& meas_cov,
                                         const FusionOptions& options = {});
[[nodiscard]] FusionResult fusion_update(const FilterState& pred, const PoseMeasurement& meas,
                                         const FusionOptions& options = {});

/// Throws SingularInnovationCovariance.
[[nodiscard]] FilterState eskf_update(const FilterState& pred, const Posed& meas_pose,
                                      const CovTangent& meas_cov);
[[nodiscard]] FilterState eskf_update(const FilterState& pred, const PoseMeasurement& meas);

/// Filter state initialised from a single measurement.
[[nodiscard]] FilterState state_from_measurement(const PoseMeasurement& meas);

// ---------------------------------------------------------------------------
// Euler-angle baseline
// ---------------------------------------------------------------------------

/// Intrinsic Z-Y-X: R = Rz(yaw) Ry(pitch) Rx(roll).
[[nodiscard]] Vector3d euler_from_rotation(const Rotationd& rotation);
[[nodiscard]] Rotationd rotation_from_euler(const Vector3d& ypr);

inline constexpr double kGimbalMargin = 1e-3;

/// State [p; yaw, pitch, roll] with a Euclidean covariance.
struct EulerState {
  Vector6d x = Vector6d::Zero();
  Matrix6d cov = Matrix6d::Zero();
};

[[nodiscard]] Vector6d euler_vector(const Posed& pose);
[[nodiscard]] Posed pose_from_euler_vector(const Vector6d& x);

/// d[p; ypr] of exp(n) * pose with respect to n, at n = 0.
[[nodiscard]] Matrix6d euler_tangent_jacobian(const Posed& pose);

/// EKF prediction with a numerical Jacobian of the motion model. The
/// tangent process noise is mapped through euler_tangent_jacobian.
[[nodiscard]] EulerState euler_predict(const EulerState& state, const MotionCommand& cmd);

/// Covariance of the measured [p; ypr] implied by the measurement noise.
[[nodiscard]] Matrix6d euler_measurement_covariance(const PoseMeasurement& meas);

[[nodiscard]] EulerState euler_ekf_update(const EulerState& pred, const Vector6d& z,
                                          const Matrix6d& meas_cov);
[[nodiscard]] EulerState euler_ekf_update(const EulerState& pred, const PoseMeasurement& meas);

[[nodiscard]] EulerState euler_state_from_measurement(const PoseMeasurement& meas);

// ---------------------------------------------------------------------------
// Metrics
// ---------------------------------------------------------------------------

/// Angle wrapped to (-pi, pi].
[[nodiscard]] double wrap_angle(double angle);

/// ||so3_log(R_est R_true^T)||.
[[nodiscard]] double rotation_error(const Rotationd& estimate, const Rotationd& truth);

/// sqrt(mean ||so3_log(R_est R_true^T)||^2). Throws LengthMismatch.
[[nodiscard]] double rotation_rmse(const std::vector<Rotationd>& estimates,
                                   const std::vector<Rotationd>& truths);

}  // namespace liepose
