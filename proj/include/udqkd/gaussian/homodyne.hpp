#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "udqkd/errors.hpp"
#include "udqkd/gaussian/cov_matrix.hpp"

namespace udqkd {

inline constexpr double kSingularConditioningTol = 1e-12;

/// Covariance of the remaining modes after homodyne detection of one
/// quadrature of one mode.
///
/// The pseudoinverse of the projected block x*gamma_m*x (x = diag(1,0) or
/// diag(0,1)) has a single non-zero entry, so the update is the rank-one
/// Schur complement  gamma_rest - c c^T / v  with v the measured variance and
/// c the measured row restricted to the remaining modes. The result does not
/// depend on the measurement outcome.
inline CovMatrix condition_on_homodyne(const CovMatrix& gamma, const QuadratureSelector& sel) {
  const std::size_t n = gamma.n_modes();
  if (n < 2) fail(ErrorCode::InvalidParameter, "homodyne conditioning needs at least two modes");
  if (sel.mode_index >= n) {
    fail(ErrorCode::InvalidParameter,
         "mode index " + std::to_string(sel.mode_index) + " out of range for " + std::to_string(n) + " modes");
  }
  const Matrix& g = gamma.matrix();
  const Eigen::Index measured = sel.row();
  const double v = g(measured, measured);
  if (v <= kSingularConditioningTol) {
    fail(ErrorCode::SingularConditioning, "measured quadrature variance is not positive");
  }

  std::vector<Eigen::Index> keep;
  keep.reserve(2 * (n - 1));
  const auto skip = static_cast<Eigen::Index>(2 * sel.mode_index);
  for (Eigen::Index i = 0; i < g.rows(); ++i) {
    if (i != skip && i != skip + 1) keep.push_back(i);
  }

  const auto m = static_cast<Eigen::Index>(keep.size());
  Matrix out(m, m);
  for (Eigen::Index a = 0; a < m; ++a) {
    for (Eigen::Index b = a; b < m; ++b) {
      const double val = g(keep[a], keep[b]) - g(keep[a], measured) * g(measured, keep[b]) / v;
      out(a, b) = val;
      out(b, a) = val;
    }
  }
  return CovMatrix(std::move(out));
}

}  // namespace udqkd
