#pragma once

#include <Eigen/Core>

namespace liepose {

/// Conditioning summary of a symmetric matrix from its eigenvalues.
struct SymmetricSpectrum {
  double min_eigenvalue = 0.0;
  double max_eigenvalue = 0.0;
  /// max / min; +inf when min <= 0.
  double condition_number = 0.0;
};

[[nodiscard]] SymmetricSpectrum symmetric_spectrum(const Eigen::MatrixXd& m);

/// Inverse through a symmetric eigendecomposition, flooring eigenvalues at
/// 1e-15 * lambda_max so the result is always finite and PSD.
[[nodiscard]] Eigen::MatrixXd symmetric_inverse(const Eigen::MatrixXd& m);

/// Matrix square root factor L with L L^T = m for symmetric PSD m
/// (negative eigenvalues from round-off are clipped to zero).
[[nodiscard]] Eigen::MatrixXd psd_sqrt_factor(const Eigen::MatrixXd& m);

template <typename Derived>
[[nodiscard]] typename Derived::PlainObject symmetrized(const Eigen::MatrixBase<Derived>& m) {
  return (0.5 * (m + m.transpose())).eval();
}

}  // namespace liepose
