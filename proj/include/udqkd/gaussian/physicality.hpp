#pragma once

#include <complex>

#include <Eigen/Dense>

#include "udqkd/gaussian/cov_matrix.hpp"

namespace udqkd {

inline constexpr double kPhysicalityTol = 1e-9;

/// Smallest eigenvalue of the Hermitian matrix gamma + i*Omega.
inline double uncertainty_margin(const CovMatrix& gamma) {
  const Matrix omega = SymplecticForm(gamma.n_modes()).matrix();
  Eigen::MatrixXcd h = gamma.matrix().cast<std::complex<double>>();
  h += std::complex<double>(0.0, 1.0) * omega.cast<std::complex<double>>();
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues()(0);
}

/// Uncertainty-principle test gamma + i*Omega >= -tol.
inline bool is_physical(const CovMatrix& gamma, double tol = kPhysicalityTol) {
  const Eigen::SelfAdjointEigenSolver<Matrix> ordinary(gamma.matrix(), Eigen::EigenvaluesOnly);
  if (ordinary.eigenvalues()(0) <= 0.0) return false;
  return uncertainty_margin(gamma) >= -tol;
}

}  // namespace udqkd
