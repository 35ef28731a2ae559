#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "udqkd/errors.hpp"
#include "udqkd/gaussian/cov_matrix.hpp"

namespace udqkd {

inline constexpr double kUnitClampTol = 1e-9;
inline constexpr double kPairingTol = 1e-8;

/// Symplectic spectrum of `gamma`, one value per mode, sorted descending.
///
/// Computed as the positive half of the spectrum of the Hermitian matrix
/// i * gamma^{1/2} Omega gamma^{1/2}, which is similar to i Omega gamma.
/// Values in [1 - 1e-9, 1) are clamped to 1; values further below 1 are
/// returned unchanged (unphysical input).
inline std::vector<double> symplectic_eigenvalues(const CovMatrix& gamma) {
  const Matrix& g = gamma.matrix();
  const Eigen::SelfAdjointEigenSolver<Matrix> ordinary(g);
  if (ordinary.info() != Eigen::Success) {
    fail(ErrorCode::NumericalDegeneracy, "eigen-decomposition of covariance matrix failed");
  }
  if (ordinary.eigenvalues().minCoeff() <= 0.0) {
    fail(ErrorCode::NonPositiveDefinite, "covariance matrix is not positive definite");
  }
  const Matrix& u = ordinary.eigenvectors();
  const Matrix root = u * ordinary.eigenvalues().cwiseSqrt().asDiagonal() * u.transpose();
  const Matrix omega = SymplecticForm(gamma.n_modes()).matrix();

  // root * Omega * root is real antisymmetric, so i times it is Hermitian.
  const Eigen::MatrixXcd h = std::complex<double>(0.0, 1.0) * (root * omega * root).cast<std::complex<double>>();
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    fail(ErrorCode::NumericalDegeneracy, "eigen-decomposition of i*Omega*gamma failed");
  }
  const Eigen::VectorXd& ev = solver.eigenvalues();  // ascending

  const auto dim = ev.size();
  const auto n = dim / 2;
  std::vector<double> nu;
  nu.reserve(static_cast<std::size_t>(n));
  for (Eigen::Index k = 0; k < n; ++k) {
    const double neg = ev(k);
    const double pos = ev(dim - 1 - k);
    if (std::abs(pos + neg) > kPairingTol * std::max(1.0, std::abs(pos))) {
      fail(ErrorCode::NumericalDegeneracy,
           "symplectic eigenvalues do not pair: " + std::to_string(neg) + " vs " + std::to_string(pos));
    }
    double v = 0.5 * (pos - neg);
    if (v < 1.0 && v >= 1.0 - kUnitClampTol) v = 1.0;
    nu.push_back(v);
  }
  return nu;
}

/// Bosonic entropy function (bits) of one symplectic eigenvalue.
inline double entropy_g(double nu) {
  if (!(nu >= 1.0 - kUnitClampTol)) {
    fail(ErrorCode::DomainError, "entropy_g requires nu >= 1, got " + std::to_string(nu));
  }
  if (nu <= 1.0) return 0.0;
  const double a = 0.5 * (nu + 1.0);
  const double b = 0.5 * (nu - 1.0);
  return a * std::log2(a) - b * std::log2(b);
}

/// Von Neumann entropy (bits) of a Gaussian state.
inline double von_neumann_entropy(const CovMatrix& gamma) {
  double s = 0.0;
  for (double nu : symplectic_eigenvalues(gamma)) s += entropy_g(nu);
  return s;
}

}  // namespace udqkd
