#pragma once

// Intrinsic CRB pipeline: tangent-space projection of the channel FIM, gain
// removal, transformation to the 6D pose and the derived error bounds.

#include <Eigen/Core>

#include <functional>
#include <vector>

#include "liepose/channel.hpp"
#include "liepose/lie.hpp"

namespace liepose {

/// Rows e1^T, e2^T spanning the tangent plane of the unit sphere at t.
using TangentBasis = Eigen::Matrix<double, 2, 3>;
using BasisFunction = std::function<TangentBasis(const Vector3d&)>;

/// Per-anchor parameters kept after gain removal: [tau, t_UB(2), t_BU(2)].
inline constexpr int kReducedLinkParams = 5;

/// e1 = normalize(a x t) with a the coordinate axis least aligned with t
/// (ties go to the later axis), e2 = t x e1.
[[nodiscard]] TangentBasis tangent_basis(const Vector3d& dir);

/// B_z F B_z^T with B_z = blockdiag(1, B(t_UB), B(t_BU), I_2) per anchor.
/// Input is 9N x 9N in per-anchor layout, output 7N x 7N.
[[nodiscard]] Eigen::MatrixXd project_fim(const Eigen::MatrixXd& fim, const ChannelParams& params,
                                          const BasisFunction& basis = tangent_basis);

/// Schur complement of the rows/columns listed in `nuisance`. Returns the
/// information left on the remaining indices, in their original order.
[[nodiscard]] Eigen::MatrixXd schur_complement(const Eigen::MatrixXd& fim,
                                               const std::vector<int>& nuisance);

/// 7N -> 5N: removes Re/Im of every gain.
[[nodiscard]] Eigen::MatrixXd efim_remove_gains(const Eigen::MatrixXd& fim);

/// d z / d x, (5N) x 6, with x = [p; left rotation perturbation].
[[nodiscard]] Eigen::MatrixXd state_jacobian_tz(const Posed& ue,
                                                const std::vector<AnchorConfig>& anchors,
                                                const BasisFunction& basis = tangent_basis);

[[nodiscard]] Matrix6d state_fim(const Eigen::MatrixXd& fim_z, const Eigen::MatrixXd& t_z);

struct IcrbReport {
  Matrix6d icrb = Matrix6d::Zero();  ///< over [p; r]
  double peb_m = 0.0;
  double rmeb_rad = 0.0;
};

/// Throws UnobservableState when the condition number of f_x exceeds 1e12.
[[nodiscard]] IcrbReport icrb_report(const Matrix6d& fim_x);

/// Full pipeline from pose and configuration to the report.
[[nodiscard]] IcrbReport compute_icrb(const Posed& ue, const ArrayGeometry& ue_array,
                                      const std::vector<AnchorConfig>& anchors,
                                      const SignalConfig& sig, const BeamSet& beams,
                                      const BasisFunction& basis = tangent_basis);

/// d(J_l(r) rho) / dr.
[[nodiscard]] Matrix3d translation_jacobian_wrt_rotation(const Vector3d& rho, const Vector3d& r);

/// d c / d g for g = [rho; r] = log(pose) and c = [r; J_l(r) rho].
[[nodiscard]] Matrix6d pose_coordinate_jacobian(const Vector6d& g);

/// Covariance over xi = [rho; r] from an ICRB over [p; r]:
/// Sigma = (dc/dg)^-1 P (dc/dg)^-T with P the ICRB permuted to [r; p].
/// Throws SingularJacobian when dc/dg cannot be inverted.
[[nodiscard]] CovTangent measurement_covariance(const Matrix6d& icrb, const Posed& pose);

}  // namespace liepose
