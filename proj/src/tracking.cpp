#include "liepose/tracking.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Geometry>
#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "liepose/bounds.hpp"
#include "liepose/linalg.hpp"

namespace liepose {

namespace {

constexpr double kMaxNormalCondition = 1e14;

Matrix6d spd_inverse(const Matrix6d& m, ErrorCode code, const char* what) {
  const Eigen::LDLT<Matrix6d> ldlt(m);
  if (ldlt.info() != Eigen::Success || !ldlt.isPositive() ||
      !(symmetric_spectrum(m).condition_number < kMaxNormalCondition)) {
    throw Error(code, what);
  }
  return symmetrized(Matrix6d(ldlt.solve(Matrix6d::Identity())));
}

// Jacobian of log(T_m T^-1) with respect to a left perturbation of T, up to
// sign: A = J_l(-h)^-1.
Matrix6d residual_jacobian(const Vector6d& h) {
  if (h.norm() < 0.5) return Matrix6d::Identity() + 0.5 * small_adjoint(h);
  return se3_left_jacobian(Vector6d(-h)).inverse();
}

struct NormalEquations {
  Matrix6d info;
  Vector6d gradient;
};

NormalEquations normal_equations(const Posed& estimate, const Posed& pred_pose,
                                 const Matrix6d& pred_weight, const Posed& meas_pose,
                                 const Matrix6d& meas_weight) {
  NormalEquations eq{Matrix6d::Zero(), Vector6d::Zero()};
  const Posed inv = estimate.inverse();
  const Posed* poses[2] = {&meas_pose, &pred_pose};
  const Matrix6d* weights[2] = {&meas_weight, &pred_weight};
  for (int m = 0; m < 2; ++m) {
    const Vector6d h = se3_log(*poses[m] * inv);
    const Matrix6d a = residual_jacobian(h);
    eq.info += a.transpose() * *weights[m] * a;
    eq.gradient += a.transpose() * *weights[m] * h;
  }
  return eq;
}

Vector6d euler_difference(const Vector6d& a, const Vector6d& b) {
  Vector6d d = a - b;
  for (int i = 3; i < 6; ++i) d(i) = wrap_angle(d(i));
  return d;
}

void check_gimbal(double pitch) {
  if (std::abs(pitch) > std::numbers::pi / 2.0 - kGimbalMargin) {
    throw Error(ErrorCode::kGimbalLock, "pitch is within the gimbal-lock margin");
  }
}

}  // namespace

Posed motion_increment(const MotionCommand& cmd) {
  return Posed(so3_exp(Vector3d(cmd.w * cmd.dt)), cmd.v * cmd.dt);
}

FilterState predict(const FilterState& state, const MotionCommand& cmd) {
  const Posed f = motion_increment(cmd);
  const Matrix6d ad = adjoint(f);
  return {f * state.pose, symmetrized(Matrix6d(ad * state.cov * ad.transpose() + cmd.process_noise))};
}

CovTangent diagonal_process_noise(double sigma_rho_m, double sigma_r_rad) {
  CovTangent q = CovTangent::Zero();
  q.diagonal() << Vector3d::Constant(sigma_rho_m * sigma_rho_m),
      Vector3d::Constant(sigma_r_rad * sigma_r_rad);
  return q;
}

FusionResult fusion_update(const FilterState& pred, const Posed& meas_pose,
                           const CovTangent& meas_cov, const FusionOptions& options) {
  const Matrix6d pred_weight = spd_inverse(pred.cov, ErrorCode::kSingularNormalEquations,
                                           "prediction covariance is not invertible");
  const Matrix6d meas_weight = spd_inverse(meas_cov, ErrorCode::kSingularNormalEquations,
                                           "measurement covariance is not invertible");
  FusionResult result;
  Posed estimate = pred.pose;
  for (int iter = 1; iter <= options.max_iters; ++iter) {
    const NormalEquations eq =
        normal_equations(estimate, pred.pose, pred_weight, meas_pose, meas_weight);
    const Eigen::LDLT<Matrix6d> ldlt(eq.info);
    if (ldlt.info() != Eigen::Success || !ldlt.isPositive()) {
      throw Error(ErrorCode::kSingularNormalEquations, "fusion normal equations are singular");
    }
    const Vector6d step = ldlt.solve(eq.gradient);
    estimate = se3_exp(step) * estimate;
    result.iterations = iter;
    if (step.norm() < options.eps_threshold) {
      result.converged = true;
      break;
    }
  }
  const NormalEquations eq =
      normal_equations(estimate, pred.pose, pred_weight, meas_pose, meas_weight);
  result.state.pose = estimate;
  result.state.cov = spd_inverse(eq.info, ErrorCode::kSingularNormalEquations,
                                 "fusion information matrix is singular");
  return result;
}

FusionResult fusion_update(const FilterState& pred, const PoseMeasurement& meas,
                           const FusionOptions& options) {
  return fusion_update(pred, meas.pose, measurement_covariance(meas.cov_state_icrb, meas.pose),
                       options);
}

FilterState eskf_update(const FilterState& pred, const Posed& meas_pose,
                        const CovTangent& meas_cov) {
  const Vector6d innovation = se3_log(meas_pose * pred.pose.inverse());
  const Matrix6d s_inv =
      spd_inverse(Matrix6d(pred.cov + meas_cov), ErrorCode::kSingularInnovationCovariance,
                  "innovation covariance is not invertible");
  const Matrix6d gain = pred.cov * s_inv;
  const Vector6d delta = gain * innovation;
  const Matrix6d error_cov = (Matrix6d::Identity() - gain) * pred.cov;
  const Matrix6d jl = se3_left_jacobian(delta);
  return {se3_exp(delta) * pred.pose, symmetrized(Matrix6d(jl * error_cov * jl.transpose()))};
}

FilterState eskf_update(const FilterState& pred, const PoseMeasurement& meas) {
  return eskf_update(pred, meas.pose, measurement_covariance(meas.cov_state_icrb, meas.pose));
}

FilterState state_from_measurement(const PoseMeasurement& meas) {
  return {meas.pose, measurement_covariance(meas.cov_state_icrb, meas.pose)};
}

// ---------------------------------------------------------------------------

Vector3d euler_from_rotation(const Rotationd& rotation) {
  const Matrix3d& m = rotation.matrix();
  const double pitch = std::asin(std::clamp(-m(2, 0), -1.0, 1.0));
  check_gimbal(pitch);
  return {std::atan2(m(1, 0), m(0, 0)), pitch, std::atan2(m(2, 1), m(2, 2))};
}

Rotationd rotation_from_euler(const Vector3d& ypr) {
  const Matrix3d m = (Eigen::AngleAxisd(ypr(0), Vector3d::UnitZ()) *
                      Eigen::AngleAxisd(ypr(1), Vector3d::UnitY()) *
                      Eigen::AngleAxisd(ypr(2), Vector3d::UnitX()))
                         .toRotationMatrix();
  return Rotationd::from_matrix_unchecked(m);
}

Vector6d euler_vector(const Posed& pose) {
  Vector6d x;
  x << pose.position(), euler_from_rotation(pose.rotation());
  return x;
}

Posed pose_from_euler_vector(const Vector6d& x) {
  return Posed::from_rotation_position(rotation_from_euler(x.tail<3>()), x.head<3>());
}

Matrix6d euler_tangent_jacobian(const Posed& pose) {
  constexpr double kStep = 1e-6;
  Matrix6d jac;
  for (int i = 0; i < 6; ++i) {
    const Vector6d e = Vector6d::Unit(i) * kStep;
    jac.col(i) = euler_difference(euler_vector(se3_exp(e) * pose),
                                  euler_vector(se3_exp(Vector6d(-e)) * pose)) /
                 (2.0 * kStep);
  }
  return jac;
}

EulerState euler_predict(const EulerState& state, const MotionCommand& cmd) {
  constexpr double kStep = 1e-6;
  check_gimbal(state.x(4));
  const Posed f = motion_increment(cmd);
  const auto model = [&f](const Vector6d& x) { return euler_vector(f * pose_from_euler_vector(x)); };

  Matrix6d phi;
  for (int i = 0; i < 6; ++i) {
    const Vector6d e = Vector6d::Unit(i) * kStep;
    phi.col(i) = euler_difference(model(state.x + e), model(state.x - e)) / (2.0 * kStep);
  }
  EulerState out;
  out.x = model(state.x);
  const Matrix6d m = euler_tangent_jacobian(pose_from_euler_vector(out.x));
  out.cov = symmetrized(
      Matrix6d(phi * state.cov * phi.transpose() + m * cmd.process_noise * m.transpose()));
  return out;
}

Matrix6d euler_measurement_covariance(const PoseMeasurement& meas) {
  const Matrix6d m = euler_tangent_jacobian(meas.pose);
  const CovTangent sigma = measurement_covariance(meas.cov_state_icrb, meas.pose);
  return symmetrized(Matrix6d(m * sigma * m.transpose()));
}

EulerState euler_ekf_update(const EulerState& pred, const Vector6d& z, const Matrix6d& meas_cov) {
  check_gimbal(pred.x(4));
  check_gimbal(z(4));
  const Vector6d innovation = euler_difference(z, pred.x);
  const Matrix6d s_inv =
      spd_inverse(Matrix6d(pred.cov + meas_cov), ErrorCode::kSingularInnovationCovariance,
                  "innovation covariance is not invertible");
  const Matrix6d gain = pred.cov * s_inv;
  const Matrix6d i_minus_k = Matrix6d::Identity() - gain;
  EulerState out;
  out.x = pred.x + gain * innovation;
  for (int i = 3; i < 6; ++i) out.x(i) = wrap_angle(out.x(i));
  out.cov = symmetrized(Matrix6d(i_minus_k * pred.cov * i_minus_k.transpose() +
                                 gain * meas_cov * gain.transpose()));
  return out;
}

EulerState euler_ekf_update(const EulerState& pred, const PoseMeasurement& meas) {
  return euler_ekf_update(pred, euler_vector(meas.pose), euler_measurement_covariance(meas));
}

EulerState euler_state_from_measurement(const PoseMeasurement& meas) {
  return {euler_vector(meas.pose), euler_measurement_covariance(meas)};
}

// ---------------------------------------------------------------------------

double wrap_angle(double angle) {
  constexpr double kPi = std::numbers::pi;
  double wrapped = std::remainder(angle, 2.0 * kPi);
  if (wrapped <= -kPi) wrapped += 2.0 * kPi;
  return wrapped;
}

double rotation_error(const Rotationd& estimate, const Rotationd& truth) {
  return so3_log(estimate * truth.inverse()).norm();
}

double rotation_rmse(const std::vector<Rotationd>& estimates, const std::vector<Rotationd>& truths) {
  if (estimates.size() != truths.size() || estimates.empty()) {
    throw Error(ErrorCode::kLengthMismatch, "estimate and truth lists differ in length or are empty");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < estimates.size(); ++i) {
    const double e = rotation_error(estimates[i], truths[i]);
    sum += e * e;
  }
  return std::sqrt(sum / static_cast<double>(estimates.size()));
}

}  // namespace liepose
