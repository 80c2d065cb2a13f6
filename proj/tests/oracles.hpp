#pragma once

// Independent reference computations used only by the tests.

#include <Eigen/Core>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "liepose/channel.hpp"
#include "liepose/lie.hpp"

namespace oracle {

using namespace liepose;

/// Truncated power series of the matrix exponential.
template <typename Derived>
typename Derived::PlainObject expm_series(const Eigen::MatrixBase<Derived>& a, int terms = 30) {
  using M = typename Derived::PlainObject;
  M sum = M::Identity(a.rows(), a.cols());
  M term = M::Identity(a.rows(), a.cols());
  for (int n = 1; n < terms; ++n) {
    term = (term * a / static_cast<double>(n)).eval();
    sum += term;
  }
  return sum;
}

/// sum_n A^n / (n+1)!
template <typename Derived>
typename Derived::PlainObject phi1_series(const Eigen::MatrixBase<Derived>& a, int terms = 30) {
  using M = typename Derived::PlainObject;
  M sum = M::Identity(a.rows(), a.cols());
  M term = M::Identity(a.rows(), a.cols());
  for (int n = 1; n < terms; ++n) {
    term = (term * a / static_cast<double>(n + 1)).eval();
    sum += term;
  }
  return sum;
}

/// Closed-form SE(3) left Jacobian [[J, Q], [0, J]] (Barfoot's Q block).
inline Matrix6d se3_left_jacobian_closed(const Vector6d& xi) {
  const Vector3d rho = xi.head<3>();
  const Vector3d phi = xi.tail<3>();
  const double t = phi.norm();
  const Matrix3d px = hat3(phi), rx = hat3(rho);
  const double t2 = t * t, t3 = t2 * t, t4 = t3 * t, t5 = t4 * t;
  const double c1 = 0.5;
  const double c2 = (t - std::sin(t)) / t3;
  const double c3 = (t2 + 2.0 * std::cos(t) - 2.0) / (2.0 * t4);
  const double c4 = (2.0 * t - 3.0 * std::sin(t) + t * std::cos(t)) / (2.0 * t5);
  const Matrix3d q = c1 * rx + c2 * (px * rx + rx * px + px * rx * px) +
                     c3 * (px * px * rx + rx * px * px - 3.0 * px * rx * px) +
                     c4 * (px * rx * px * px + px * px * rx * px);
  Matrix6d out = Matrix6d::Zero();
  const Matrix3d j = phi1_series(px);
  out.topLeftCorner<3, 3>() = j;
  out.bottomRightCorner<3, 3>() = j;
  out.topRightCorner<3, 3>() = q;
  return out;
}

inline Vector3d random_unit(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  return Vector3d(n(rng), n(rng), n(rng)).normalized();
}

inline Vector3d random_axis_angle(std::mt19937_64& rng, double max_angle) {
  std::uniform_real_distribution<double> u(0.0, max_angle);
  return random_unit(rng) * u(rng);
}

inline Posed random_pose(std::mt19937_64& rng, double max_angle = 3.0, double max_translation = 5.0) {
  std::uniform_real_distribution<double> u(-max_translation, max_translation);
  return Posed(so3_exp(random_axis_angle(rng, max_angle)), Vector3d(u(rng), u(rng), u(rng)));
}

/// Central finite-difference Jacobian of f: R^n -> R^m.
template <typename F>
Eigen::MatrixXd numeric_jacobian(F f, const Eigen::VectorXd& x, double step) {
  const Eigen::VectorXd f0 = f(x);
  Eigen::MatrixXd jac(f0.size(), x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    Eigen::VectorXd xp = x, xm = x;
    xp(i) += step;
    xm(i) -= step;
    jac.col(i) = (f(xp) - f(xm)) / (2.0 * step);
  }
  return jac;
}

inline double relative_error(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  const double scale = std::max(b.norm(), 1e-300);
  return (a - b).norm() / scale;
}

/// Received signal evaluated element by element with plain loops.
inline std::complex<double> scalar_signal(const LinkParams& link, const ArrayGeometry& ue_array,
                                          const ArrayGeometry& bs_array,
                                          const Eigen::VectorXcd& combiner,
                                          const Eigen::VectorXcd& precoder, double carrier_hz,
                                          double spacing_hz, int c, double x) {
  const double pi = 3.14159265358979323846;
  const double k = 2.0 * pi * carrier_hz / 299792458.0;
  std::complex<double> ue_sum = 0.0, bs_sum = 0.0;
  for (int d = 0; d < ue_array.size(); ++d) {
    double phase = 0.0;
    for (int i = 0; i < 3; ++i) phase += ue_array.elements[d](i) * link.dir_ue(i);
    ue_sum += combiner(d) * std::polar(1.0, k * phase);
  }
  for (int d = 0; d < bs_array.size(); ++d) {
    double phase = 0.0;
    for (int i = 0; i < 3; ++i) phase += bs_array.elements[d](i) * link.dir_bs(i);
    bs_sum += std::polar(1.0, k * phase) * precoder(d);
  }
  return link.gain * ue_sum * bs_sum * std::polar(1.0, -2.0 * pi * link.delay_s * c * spacing_hz) * x;
}

}  // namespace oracle
