#include "liepose/bounds.hpp"

#include <Eigen/Cholesky>
#include <Eigen/LU>

#include <algorithm>
#include <cmath>

#include "liepose/linalg.hpp"

namespace liepose {

namespace {

constexpr double kMaxCondition = 1e12;

Eigen::MatrixXd select(const Eigen::MatrixXd& m, const std::vector<int>& rows,
                       const std::vector<int>& cols) {
  Eigen::MatrixXd out(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) out(i, j) = m(rows[i], cols[j]);
  }
  return out;
}

}  // namespace

TangentBasis tangent_basis(const Vector3d& dir) {
  int axis = 0;
  for (int i = 1; i < 3; ++i) {
    if (std::abs(dir(i)) <= std::abs(dir(axis))) axis = i;
  }
  const Vector3d e1 = Vector3d::Unit(axis).cross(dir).normalized();
  const Vector3d e2 = dir.cross(e1);
  TangentBasis basis;
  basis.row(0) = e1.transpose();
  basis.row(1) = e2.transpose();
  return basis;
}

Eigen::MatrixXd project_fim(const Eigen::MatrixXd& fim, const ChannelParams& params,
                            const BasisFunction& basis) {
  const int n = static_cast<int>(params.size());
  if (fim.rows() != kLinkParams * n || fim.cols() != kLinkParams * n) {
    throw Error(ErrorCode::kInvalidArgument, "FIM size does not match the number of anchors");
  }
  Eigen::MatrixXd b_z = Eigen::MatrixXd::Zero(7 * n, kLinkParams * n);
  for (int a = 0; a < n; ++a) {
    const int r = 7 * a;
    const int c = kLinkParams * a;
    b_z(r, c) = 1.0;
    b_z.block<2, 3>(r + 1, c + 1) = basis(params[a].dir_ue);
    b_z.block<2, 3>(r + 3, c + 4) = basis(params[a].dir_bs);
    b_z(r + 5, c + 7) = 1.0;
    b_z(r + 6, c + 8) = 1.0;
  }
  return symmetrized(Eigen::MatrixXd(b_z * fim * b_z.transpose()));
}

Eigen::MatrixXd schur_complement(const Eigen::MatrixXd& fim, const std::vector<int>& nuisance) {
  std::vector<bool> is_nuisance(fim.rows(), false);
  for (int i : nuisance) {
    if (i < 0 || i >= fim.rows()) throw Error(ErrorCode::kInvalidArgument, "nuisance index out of range");
    is_nuisance[i] = true;
  }
  std::vector<int> keep;
  for (int i = 0; i < fim.rows(); ++i) {
    if (!is_nuisance[i]) keep.push_back(i);
  }

  const Eigen::MatrixXd f_aa = select(fim, keep, keep);
  const Eigen::MatrixXd f_ab = select(fim, keep, nuisance);
  Eigen::MatrixXd f_bb = select(fim, nuisance, nuisance);
  if (nuisance.empty()) return f_aa;

  if (symmetric_spectrum(f_bb).condition_number > kMaxCondition) {
    const double load = 1e-12 * f_bb.trace() / static_cast<double>(f_bb.rows());
    f_bb += load * Eigen::MatrixXd::Identity(f_bb.rows(), f_bb.cols());
  }
  const Eigen::LDLT<Eigen::MatrixXd> ldlt(f_bb);
  if (ldlt.info() != Eigen::Success || !ldlt.isPositive() ||
      !(symmetric_spectrum(f_bb).min_eigenvalue > 0.0)) {
    throw Error(ErrorCode::kSingularNuisanceBlock, "nuisance information block is not invertible");
  }
  return symmetrized(Eigen::MatrixXd(f_aa - f_ab * ldlt.solve(f_ab.transpose())));
}

Eigen::MatrixXd efim_remove_gains(const Eigen::MatrixXd& fim) {
  if (fim.rows() % 7 != 0 || fim.rows() != fim.cols()) {
    throw Error(ErrorCode::kInvalidArgument, "expected a square 7N x 7N FIM");
  }
  std::vector<int> gains;
  for (int a = 0; a < fim.rows() / 7; ++a) {
    gains.push_back(7 * a + 5);
    gains.push_back(7 * a + 6);
  }
  return schur_complement(fim, gains);
}

Eigen::MatrixXd state_jacobian_tz(const Posed& ue, const std::vector<AnchorConfig>& anchors,
                                  const BasisFunction& basis) {
  const int n = static_cast<int>(anchors.size());
  const Matrix3d r_ue_t = ue.rotation().matrix().transpose();
  Eigen::MatrixXd t_z = Eigen::MatrixXd::Zero(kReducedLinkParams * n, 6);
  for (int a = 0; a < n; ++a) {
    const auto [dir_bs, dir_ue] = direction_vectors(ue, anchors[a]);
    const Vector3d diff = ue.position() - anchors[a].position;
    const double dist = diff.norm();
    const Vector3d u = diff / dist;
    const Matrix3d du_dp = (Matrix3d::Identity() - u * u.transpose()) / dist;
    const Matrix3d r_bs_t = anchors[a].orientation.matrix().transpose();
    const int row = kReducedLinkParams * a;

    t_z.block<1, 3>(row, 0) = u.transpose() / kSpeedOfLight;

    const TangentBasis b_ue = basis(dir_ue);
    t_z.block<2, 3>(row + 1, 0) = -b_ue * r_ue_t * du_dp;
    t_z.block<2, 3>(row + 1, 3) = -b_ue * r_ue_t * hat3(u);

    const TangentBasis b_bs = basis(dir_bs);
    t_z.block<2, 3>(row + 3, 0) = b_bs * r_bs_t * du_dp;
  }
  return t_z;
}

Matrix6d state_fim(const Eigen::MatrixXd& fim_z, const Eigen::MatrixXd& t_z) {
  if (fim_z.rows() != t_z.rows() || fim_z.cols() != t_z.rows() || t_z.cols() != 6) {
    throw Error(ErrorCode::kInvalidArgument, "state FIM operands do not conform");
  }
  return symmetrized(Matrix6d(t_z.transpose() * fim_z * t_z));
}

IcrbReport icrb_report(const Matrix6d& fim_x) {
  const SymmetricSpectrum spectrum = symmetric_spectrum(fim_x);
  if (!(spectrum.condition_number <= kMaxCondition)) {
    throw Error(ErrorCode::kUnobservableState,
                "state information is rank deficient (condition number " +
                    std::to_string(spectrum.condition_number) + ")");
  }
  IcrbReport report;
  report.icrb = symmetric_inverse(fim_x);
  report.peb_m = std::sqrt(report.icrb.topLeftCorner<3, 3>().trace());
  report.rmeb_rad = std::sqrt(report.icrb.bottomRightCorner<3, 3>().trace());
  return report;
}

IcrbReport compute_icrb(const Posed& ue, const ArrayGeometry& ue_array,
                        const std::vector<AnchorConfig>& anchors, const SignalConfig& sig,
                        const BeamSet& beams, const BasisFunction& basis) {
  const Eigen::MatrixXd fim = fim_unconstrained(ue, ue_array, anchors, sig, beams);
  const Eigen::MatrixXd fim_z =
      efim_remove_gains(project_fim(fim, channel_params(ue, anchors, sig), basis));
  return icrb_report(state_fim(fim_z, state_jacobian_tz(ue, anchors, basis)));
}

Matrix3d translation_jacobian_wrt_rotation(const Vector3d& rho, const Vector3d& r) {
  const double angle = r.norm();
  const double r_dot_rho = r.dot(rho);
  const Matrix3d double_cross =
      r_dot_rho * Matrix3d::Identity() + r * rho.transpose() - 2.0 * rho * r.transpose();
  if (angle < 1e-4) {
    return -0.5 * hat3(rho) + double_cross / 6.0;
  }
  // J_l(r) rho = rho + a r x rho + b r x (r x rho)
  const double s = std::sin(angle), c = std::cos(angle);
  const double a = (1.0 - c) / (angle * angle);
  const double b = (angle - s) / (angle * angle * angle);
  const double da = s / (angle * angle) - 2.0 * (1.0 - c) / (angle * angle * angle);
  const double db = (1.0 - c) / (angle * angle * angle) - 3.0 * (angle - s) / std::pow(angle, 4);
  const Vector3d cross = r.cross(rho);
  const Vector3d cross2 = r.cross(cross);
  const Vector3d r_unit = r / angle;
  return (da * cross + db * cross2) * r_unit.transpose() - a * hat3(rho) + b * double_cross;
}

Matrix6d pose_coordinate_jacobian(const Vector6d& g) {
  const Vector3d rho = g.head<3>();
  const Vector3d r = g.tail<3>();
  Matrix6d jac = Matrix6d::Zero();
  jac.block<3, 3>(0, 3) = Matrix3d::Identity();
  jac.block<3, 3>(3, 0) = so3_left_jacobian(r);
  jac.block<3, 3>(3, 3) = translation_jacobian_wrt_rotation(rho, r);
  return jac;
}

CovTangent measurement_covariance(const Matrix6d& icrb, const Posed& pose) {
  Vector6d g;
  try {
    g = se3_log(pose);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kNearPiRotation) {
      throw Error(ErrorCode::kSingularJacobian, "pose rotation is too close to pi");
    }
    throw;
  }
  // [p; r] -> [r; p]
  Matrix6d permuted;
  permuted.topLeftCorner<3, 3>() = icrb.bottomRightCorner<3, 3>();
  permuted.topRightCorner<3, 3>() = icrb.bottomLeftCorner<3, 3>();
  permuted.bottomLeftCorner<3, 3>() = icrb.topRightCorner<3, 3>();
  permuted.bottomRightCorner<3, 3>() = icrb.topLeftCorner<3, 3>();

  const Matrix6d jac = pose_coordinate_jacobian(g);
  const Eigen::FullPivLU<Matrix6d> lu(jac);
  if (!lu.isInvertible() || lu.rcond() < 1e-12) {
    throw Error(ErrorCode::kSingularJacobian, "pose coordinate Jacobian is singular");
  }
  const Matrix6d jac_inv = lu.inverse();
  return symmetrized(Matrix6d(jac_inv * permuted * jac_inv.transpose()));
}

}  // namespace liepose
