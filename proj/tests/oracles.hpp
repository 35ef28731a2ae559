#pragma once

// Independent reference computations used only by the tests. Nothing here
// calls into the eigen-decomposition route of the library.

#include <array>
#include <cmath>
#include <random>

namespace udqkd::testing {

/// Symplectic eigenvalues of a two-mode covariance matrix from its local
/// invariants: nu^2 = (Delta +- sqrt(Delta^2 - 4 det)) / 2.
struct TwoModeSpectrum {
  double nu_plus;
  double nu_minus;
};

template <class M>
TwoModeSpectrum two_mode_spectrum(const M& g) {
  const double det_a = g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0);
  const double det_b = g(2, 2) * g(3, 3) - g(2, 3) * g(3, 2);
  const double det_c = g(0, 2) * g(1, 3) - g(0, 3) * g(1, 2);
  const double delta = det_a + det_b + 2.0 * det_c;
  const double det = g.determinant();
  const double root = std::sqrt(std::max(0.0, delta * delta - 4.0 * det));
  return {std::sqrt(0.5 * (delta + root)), std::sqrt(std::max(0.0, 0.5 * (delta - root)))};
}

/// Closed-form bosonic entropy, written independently of the library.
inline double g_bits(double nu) {
  if (nu <= 1.0) return 0.0;
  const double a = (nu + 1.0) / 2.0;
  const double b = (nu - 1.0) / 2.0;
  return (a * std::log(a) - b * std::log(b)) / std::log(2.0);
}

inline std::mt19937_64 make_rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

}  // namespace udqkd::testing
