#include "liepose/linalg.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <limits>

namespace liepose {

SymmetricSpectrum symmetric_spectrum(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(symmetrized(m), Eigen::EigenvaluesOnly);
  SymmetricSpectrum out;
  out.min_eigenvalue = solver.eigenvalues().minCoeff();
  out.max_eigenvalue = solver.eigenvalues().maxCoeff();
  out.condition_number = out.min_eigenvalue > 0.0
                             ? out.max_eigenvalue / out.min_eigenvalue
                             : std::numeric_limits<double>::infinity();
  return out;
}

Eigen::MatrixXd symmetric_inverse(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(symmetrized(m));
  const Eigen::VectorXd& values = solver.eigenvalues();
  const double floor = std::max(1e-15 * values.maxCoeff(), std::numeric_limits<double>::min());
  const Eigen::VectorXd inv = values.unaryExpr([floor](double v) { return 1.0 / std::max(v, floor); });
  return symmetrized(solver.eigenvectors() * inv.asDiagonal() * solver.eigenvectors().transpose());
}

Eigen::MatrixXd psd_sqrt_factor(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(symmetrized(m));
  const Eigen::VectorXd root = solver.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return solver.eigenvectors() * root.asDiagonal();
}

}  // namespace liepose
