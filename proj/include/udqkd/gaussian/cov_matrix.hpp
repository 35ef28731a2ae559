#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <string>

#include <Eigen/Dense>

#include "udqkd/errors.hpp"

namespace udqkd {

using Matrix = Eigen::MatrixXd;

/// Covariance matrix of a zero-mean Gaussian state in shot-noise units
/// (vacuum variance 1), quadratures ordered (x1, p1, x2, p2, ...).
///
/// Construction validates symmetry (absolute tolerance 1e-12) and strictly
/// positive diagonal. Positive definiteness is not checked here; the
/// operations that need it report `NonPositiveDefinite` themselves.
class CovMatrix {
 public:
  static constexpr double kSymmetryTol = 1e-12;

  explicit CovMatrix(Matrix entries) : m_(std::move(entries)) { validate(); }

  CovMatrix(std::size_t n_modes, std::initializer_list<double> row_major) {
    const auto dim = static_cast<Eigen::Index>(2 * n_modes);
    if (n_modes == 0 || row_major.size() != static_cast<std::size_t>(dim * dim)) {
      fail(ErrorCode::InvalidParameter, "row-major initializer does not match 2n x 2n");
    }
    m_.resize(dim, dim);
    auto it = row_major.begin();
    for (Eigen::Index i = 0; i < dim; ++i) {
      for (Eigen::Index j = 0; j < dim; ++j) m_(i, j) = *it++;
    }
    validate();
  }

  static CovMatrix vacuum(std::size_t n_modes) {
    const auto dim = static_cast<Eigen::Index>(2 * n_modes);
    return CovMatrix(Matrix::Identity(dim, dim));
  }

  static CovMatrix diagonal(std::initializer_list<double> diag) {
    Matrix m = Matrix::Zero(static_cast<Eigen::Index>(diag.size()),
                            static_cast<Eigen::Index>(diag.size()));
    Eigen::Index i = 0;
    for (double d : diag) {
      m(i, i) = d;
      ++i;
    }
    return CovMatrix(std::move(m));
  }

  /// Block-diagonal direct sum (modes of `a` first).
  static CovMatrix direct_sum(const CovMatrix& a, const CovMatrix& b) {
    const auto da = a.dim();
    const auto db = b.dim();
    Matrix m = Matrix::Zero(da + db, da + db);
    m.topLeftCorner(da, da) = a.m_;
    m.bottomRightCorner(db, db) = b.m_;
    return CovMatrix(std::move(m));
  }

  std::size_t n_modes() const noexcept { return static_cast<std::size_t>(m_.rows() / 2); }
  Eigen::Index dim() const noexcept { return m_.rows(); }
  const Matrix& matrix() const noexcept { return m_; }
  double operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }

  /// 2x2 block of mode `mode`.
  Eigen::Matrix2d mode_block(std::size_t mode) const {
    const auto k = static_cast<Eigen::Index>(2 * mode);
    return m_.block<2, 2>(k, k);
  }

 private:
  void validate() const {
    if (m_.rows() == 0 || m_.rows() != m_.cols() || m_.rows() % 2 != 0) {
      fail(ErrorCode::InvalidParameter, "covariance matrix must be 2n x 2n with n >= 1");
    }
    for (Eigen::Index i = 0; i < m_.rows(); ++i) {
      if (!std::isfinite(m_(i, i)) || m_(i, i) <= 0.0) {
        fail(ErrorCode::InvalidParameter,
             "diagonal entry " + std::to_string(i) + " is not strictly positive");
      }
      for (Eigen::Index j = i + 1; j < m_.cols(); ++j) {
        if (!(std::abs(m_(i, j) - m_(j, i)) <= kSymmetryTol)) {
          fail(ErrorCode::InvalidParameter, "covariance matrix is not symmetric");
        }
      }
    }
  }

  Matrix m_;
};

/// Block-diagonal symplectic form, n copies of [[0, 1], [-1, 0]].
class SymplecticForm {
 public:
  explicit SymplecticForm(std::size_t n_modes) : n_(n_modes) {
    if (n_modes == 0) fail(ErrorCode::InvalidParameter, "symplectic form needs n >= 1");
  }

  std::size_t n_modes() const noexcept { return n_; }

  Matrix matrix() const {
    const auto dim = static_cast<Eigen::Index>(2 * n_);
    Matrix omega = Matrix::Zero(dim, dim);
    for (Eigen::Index k = 0; k < dim; k += 2) {
      omega(k, k + 1) = 1.0;
      omega(k + 1, k) = -1.0;
    }
    return omega;
  }

 private:
  std::size_t n_;
};

enum class Quadrature { X, P };

/// Which quadrature of which mode a homodyne detector measures.
struct QuadratureSelector {
  Quadrature quadrature = Quadrature::X;
  std::size_t mode_index = 0;

  Eigen::Index row() const noexcept {
    return static_cast<Eigen::Index>(2 * mode_index + (quadrature == Quadrature::X ? 0 : 1));
  }
};

}  // namespace udqkd
