#pragma once

// SO(3) / SE(3) primitives. Tangent vectors of SE(3) are ordered
// xi = [rho; r] (translation part first) everywhere in this header.

#include <Eigen/Core>
#include <Eigen/Geometry>
#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "liepose/error.hpp"

namespace liepose {

template <typename Scalar> using Vector3 = Eigen::Matrix<Scalar, 3, 1>;
template <typename Scalar> using Vector6 = Eigen::Matrix<Scalar, 6, 1>;
template <typename Scalar> using Matrix3 = Eigen::Matrix<Scalar, 3, 3>;
template <typename Scalar> using Matrix4 = Eigen::Matrix<Scalar, 4, 4>;
template <typename Scalar> using Matrix6 = Eigen::Matrix<Scalar, 6, 6>;

using Vector3d = Vector3<double>;
using Vector6d = Vector6<double>;
using Matrix3d = Matrix3<double>;
using Matrix4d = Matrix4<double>;
using Matrix6d = Matrix6<double>;

/// 6x6 covariance over an SE(3) tangent vector [rho; r].
using CovTangent = Matrix6d;

enum class JacobianMode { kExactSeries, kFirstOrder };
enum class SmallArgument { kFirst, kSecond };

// ---------------------------------------------------------------------------
// hat / vee
// ---------------------------------------------------------------------------

template <typename Derived>
[[nodiscard]] Matrix3<typename Derived::Scalar> hat3(const Eigen::MatrixBase<Derived>& v) {
  using Scalar = typename Derived::Scalar;
  Matrix3<Scalar> m;
  // clang-format off
  m << Scalar(0), -v(2),      v(1),
       v(2),      Scalar(0), -v(0),
      -v(1),      v(0),       Scalar(0);
  // clang-format on
  return m;
}

template <typename Scalar>
[[nodiscard]] Vector3<Scalar> vee3(const Matrix3<Scalar>& m) {
  if ((m + m.transpose()).norm() >= Scalar(1e-8)) {
    throw Error(ErrorCode::kNotSkew, "vee3 input is not skew-symmetric");
  }
  return Vector3<Scalar>(m(2, 1), m(0, 2), m(1, 0));
}

template <typename Scalar>
[[nodiscard]] Vector6<Scalar> tangent(const Vector3<Scalar>& rho, const Vector3<Scalar>& r) {
  Vector6<Scalar> xi;
  xi << rho, r;
  return xi;
}

/// 4x4 se(3) matrix [[r^, rho], [0, 0]].
template <typename Scalar>
[[nodiscard]] Matrix4<Scalar> se3_hat(const Vector6<Scalar>& xi) {
  Matrix4<Scalar> m = Matrix4<Scalar>::Zero();
  m.template topLeftCorner<3, 3>() = hat3(xi.template tail<3>());
  m.template topRightCorner<3, 1>() = xi.template head<3>();
  return m;
}

template <typename Scalar>
[[nodiscard]] Vector6<Scalar> se3_vee(const Matrix4<Scalar>& m) {
  return tangent<Scalar>(m.template topRightCorner<3, 1>(),
                         vee3<Scalar>(m.template topLeftCorner<3, 3>()));
}

// ---------------------------------------------------------------------------
// Group element types
// ---------------------------------------------------------------------------

template <typename Scalar>
class Rotation {
 public:
  using MatrixType = Matrix3<Scalar>;

  Rotation() : m_(MatrixType::Identity()) {}

  /// Validates orthonormality and det = +1 to within `tol` (Frobenius).
  static Rotation from_matrix(const MatrixType& m, Scalar tol = Scalar(1e-10)) {
    if (!m.allFinite() ||
        (m.transpose() * m - MatrixType::Identity()).norm() > tol ||
        std::abs(m.determinant() - Scalar(1)) > tol) {
      throw Error(ErrorCode::kInvalidArgument, "matrix is not a rotation");
    }
    return Rotation(m);
  }

  /// For matrices that are rotations by construction (exp map, products).
  static Rotation from_matrix_unchecked(const MatrixType& m) { return Rotation(m); }

  [[nodiscard]] const MatrixType& matrix() const { return m_; }
  [[nodiscard]] Rotation inverse() const { return Rotation(m_.transpose()); }
  [[nodiscard]] Rotation operator*(const Rotation& other) const { return Rotation(m_ * other.m_); }
  [[nodiscard]] Vector3<Scalar> operator*(const Vector3<Scalar>& v) const { return m_ * v; }

  [[nodiscard]] Scalar orthogonality_error() const {
    return (m_.transpose() * m_ - MatrixType::Identity()).norm();
  }

 private:
  explicit Rotation(const MatrixType& m) : m_(m) {}
  MatrixType m_;
};

/// Rigid transform [[R, b], [0, 1]]. The UE state stores b = R p, so the
/// physical position is recovered as p = R^T b.
template <typename Scalar>
class Pose {
 public:
  Pose() : translation_(Vector3<Scalar>::Zero()) {}
  Pose(const Rotation<Scalar>& rotation, const Vector3<Scalar>& translation_block)
      : rotation_(rotation), translation_(translation_block) {}

  static Pose from_rotation_position(const Rotation<Scalar>& rotation,
                                     const Vector3<Scalar>& position) {
    return Pose(rotation, rotation * position);
  }

  /// Validates the rotation block and the homogeneous bottom row.
  static Pose from_matrix(const Matrix4<Scalar>& m, Scalar tol = Scalar(1e-10)) {
    Eigen::Matrix<Scalar, 1, 4> bottom(0, 0, 0, 1);
    if ((m.template bottomRows<1>() - bottom).norm() > tol) {
      throw Error(ErrorCode::kInvalidArgument, "pose bottom row is not [0 0 0 1]");
    }
    return Pose(Rotation<Scalar>::from_matrix(m.template topLeftCorner<3, 3>(), tol),
                m.template topRightCorner<3, 1>());
  }

  [[nodiscard]] const Rotation<Scalar>& rotation() const { return rotation_; }
  [[nodiscard]] const Vector3<Scalar>& translation_block() const { return translation_; }
  [[nodiscard]] Vector3<Scalar> position() const {
    return rotation_.matrix().transpose() * translation_;
  }

  [[nodiscard]] Matrix4<Scalar> matrix() const {
    Matrix4<Scalar> m = Matrix4<Scalar>::Identity();
    m.template topLeftCorner<3, 3>() = rotation_.matrix();
    m.template topRightCorner<3, 1>() = translation_;
    return m;
  }

  [[nodiscard]] Pose inverse() const {
    Rotation<Scalar> rt = rotation_.inverse();
    return Pose(rt, -(rt * translation_));
  }

  [[nodiscard]] Pose operator*(const Pose& other) const {
    return Pose(rotation_ * other.rotation_, rotation_ * other.translation_ + translation_);
  }

 private:
  Rotation<Scalar> rotation_;
  Vector3<Scalar> translation_;
};

using Rotationd = Rotation<double>;
using Posed = Pose<double>;

// ---------------------------------------------------------------------------
// SO(3)
// ---------------------------------------------------------------------------

template <typename Scalar>
[[nodiscard]] Rotation<Scalar> so3_exp(const Vector3<Scalar>& r) {
  const Scalar angle = r.norm();
  const Matrix3<Scalar> k = hat3(r);
  if (angle < Scalar(1e-8)) {
    return Rotation<Scalar>::from_matrix_unchecked(Matrix3<Scalar>::Identity() + k +
                                                   Scalar(0.5) * k * k);
  }
  const Vector3<Scalar> axis = r / angle;
  const Scalar c = std::cos(angle);
  const Scalar s = std::sin(angle);
  Matrix3<Scalar> m = c * Matrix3<Scalar>::Identity() +
                      (Scalar(1) - c) * axis * axis.transpose() + s * hat3(axis);
  return Rotation<Scalar>::from_matrix_unchecked(m);
}

/// Axis-angle vector with norm in [0, pi].
template <typename Scalar>
[[nodiscard]] Vector3<Scalar> so3_log(const Rotation<Scalar>& rotation) {
  const Matrix3<Scalar>& m = rotation.matrix();
  // 2 sin(angle) * axis
  const Vector3<Scalar> w(m(2, 1) - m(1, 2), m(0, 2) - m(2, 0), m(1, 0) - m(0, 1));
  const Scalar cos_angle = std::clamp((m.trace() - Scalar(1)) / Scalar(2), Scalar(-1), Scalar(1));
  const Scalar sin_angle = Scalar(0.5) * w.norm();
  const Scalar angle = std::atan2(sin_angle, cos_angle);

  if (angle < Scalar(1e-4)) {
    // angle / (2 sin angle) = 1/2 + angle^2/12 + 7 angle^4/720 + ...
    const Scalar a2 = angle * angle;
    return (Scalar(0.5) + a2 / Scalar(12) + Scalar(7) * a2 * a2 / Scalar(720)) * w;
  }
  if (cos_angle > Scalar(-0.99)) {
    return (angle / (Scalar(2) * sin_angle)) * w;
  }

  // Near pi: the symmetric part is cos I + (1 - cos) axis axis^T.
  const Matrix3<Scalar> outer =
      (Scalar(0.5) * (m + m.transpose()) - cos_angle * Matrix3<Scalar>::Identity()) /
      (Scalar(1) - cos_angle);
  int col = 0;
  outer.diagonal().maxCoeff(&col);
  Vector3<Scalar> axis = outer.col(col).normalized();
  int dominant = 0;
  w.cwiseAbs().maxCoeff(&dominant);
  if (axis(dominant) * w(dominant) < Scalar(0)) axis = -axis;
  return angle * axis;
}

template <typename Scalar>
[[nodiscard]] Matrix3<Scalar> so3_left_jacobian(const Vector3<Scalar>& r) {
  const Scalar angle = r.norm();
  const Matrix3<Scalar> k = hat3(r);
  const Scalar a2 = angle * angle;
  if (angle < Scalar(1e-4)) {
    return Matrix3<Scalar>::Identity() + (Scalar(0.5) - a2 / Scalar(24)) * k +
           (Scalar(1) / Scalar(6) - a2 / Scalar(120)) * k * k;
  }
  const Scalar half_sin = std::sin(Scalar(0.5) * angle);
  return Matrix3<Scalar>::Identity() + (Scalar(2) * half_sin * half_sin / a2) * k +
         ((angle - std::sin(angle)) / (a2 * angle)) * k * k;
}

/// Inverse of the SO(3) left Jacobian; finite for angle < 2 pi.
template <typename Scalar>
[[nodiscard]] Matrix3<Scalar> so3_left_jacobian_inverse(const Vector3<Scalar>& r) {
  const Scalar angle = r.norm();
  const Matrix3<Scalar> k = hat3(r);
  if (angle < Scalar(1e-4)) {
    return Matrix3<Scalar>::Identity() - Scalar(0.5) * k +
           (Scalar(1) / Scalar(12) + angle * angle / Scalar(720)) * k * k;
  }
  const Scalar half = Scalar(0.5) * angle;
  const Scalar coeff =
      Scalar(1) / (angle * angle) - (std::cos(half) / std::sin(half)) / (Scalar(2) * angle);
  return Matrix3<Scalar>::Identity() - Scalar(0.5) * k + coeff * k * k;
}

// ---------------------------------------------------------------------------
// SE(3)
// ---------------------------------------------------------------------------

template <typename Scalar>
[[nodiscard]] Pose<Scalar> se3_exp(const Vector6<Scalar>& xi) {
  const Vector3<Scalar> r = xi.template tail<3>();
  return Pose<Scalar>(so3_exp(r), so3_left_jacobian(r) * xi.template head<3>());
}

template <typename Scalar>
[[nodiscard]] Vector6<Scalar> se3_log(const Pose<Scalar>& pose) {
  const Vector3<Scalar> r = so3_log(pose.rotation());
  if (std::numbers::pi_v<Scalar> - r.norm() < Scalar(1e-6)) {
    throw Error(ErrorCode::kNearPiRotation, "se3_log: rotation angle too close to pi");
  }
  return tangent<Scalar>(so3_left_jacobian_inverse(r) * pose.translation_block(), r);
}

/// Ad(T) = [[R, b^ R], [0, R]], b the translation block of T.
template <typename Scalar>
[[nodiscard]] Matrix6<Scalar> adjoint(const Pose<Scalar>& pose) {
  const Matrix3<Scalar>& rot = pose.rotation().matrix();
  Matrix6<Scalar> ad = Matrix6<Scalar>::Zero();
  ad.template topLeftCorner<3, 3>() = rot;
  ad.template topRightCorner<3, 3>() = hat3(pose.translation_block()) * rot;
  ad.template bottomRightCorner<3, 3>() = rot;
  return ad;
}

/// ad(xi) = [[r^, rho^], [0, r^]].
template <typename Scalar>
[[nodiscard]] Matrix6<Scalar> small_adjoint(const Vector6<Scalar>& xi) {
  const Matrix3<Scalar> r_hat = hat3(xi.template tail<3>());
  Matrix6<Scalar> ad = Matrix6<Scalar>::Zero();
  ad.template topLeftCorner<3, 3>() = r_hat;
  ad.template topRightCorner<3, 3>() = hat3(xi.template head<3>());
  ad.template bottomRightCorner<3, 3>() = r_hat;
  return ad;
}

template <typename Scalar>
[[nodiscard]] Matrix6<Scalar> se3_left_jacobian(const Vector6<Scalar>& xi,
                                                JacobianMode mode = JacobianMode::kExactSeries) {
  const Matrix6<Scalar> ad = small_adjoint(xi);
  if (mode == JacobianMode::kFirstOrder) {
    return Matrix6<Scalar>::Identity() + Scalar(0.5) * ad;
  }
  // sum_n ad^n / (n+1)!, stopped once a term is below 1e-14 of the running sum.
  Matrix6<Scalar> sum = Matrix6<Scalar>::Identity();
  Matrix6<Scalar> term = Matrix6<Scalar>::Identity();
  for (int n = 1; n < 200; ++n) {
    term = term * ad / Scalar(n + 1);
    sum += term;
    if (term.norm() <= Scalar(1e-14) * sum.norm()) break;
  }
  return sum;
}

template <typename Scalar>
[[nodiscard]] Matrix6<Scalar> se3_right_jacobian(const Vector6<Scalar>& xi,
                                                 JacobianMode mode = JacobianMode::kExactSeries) {
  return se3_left_jacobian<Scalar>(-xi, mode);
}

/// First-order BCH: log(exp(xi1) exp(xi2)) with one argument small.
template <typename Scalar>
[[nodiscard]] Vector6<Scalar> bch_compose_small(const Vector6<Scalar>& xi1,
                                                const Vector6<Scalar>& xi2,
                                                SmallArgument which_small) {
  if (which_small == SmallArgument::kFirst) {
    if (xi1.norm() >= Scalar(0.1)) {
      throw Error(ErrorCode::kInvalidArgument, "bch_compose_small: first argument not small");
    }
    return se3_left_jacobian(xi2).partialPivLu().solve(xi1) + xi2;
  }
  if (xi2.norm() >= Scalar(0.1)) {
    throw Error(ErrorCode::kInvalidArgument, "bch_compose_small: second argument not small");
  }
  return xi1 + se3_right_jacobian(xi1).partialPivLu().solve(xi2);
}

/// Left-perturbation difference log(a * b^-1).
template <typename Scalar>
[[nodiscard]] Vector6<Scalar> between(const Pose<Scalar>& a, const Pose<Scalar>& b) {
  return se3_log(a * b.inverse());
}

}  // namespace liepose
