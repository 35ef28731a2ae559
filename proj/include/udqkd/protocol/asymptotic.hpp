#pragma once

#include <cmath>
#include <numbers>
#include <string>

#include "udqkd/errors.hpp"

// Closed-form key rates of the symmetric, noiseless channel in the limit of
// infinite modulation variance (pure signal states, beta = 1).

namespace udqkd {

namespace detail {

inline constexpr double kCoherentTol = 1e-12;

inline void require_open_unit(double eta) {
  if (!(eta > 0.0 && eta < 1.0)) fail(ErrorCode::DomainError, "transmittance must lie in (0, 1)");
}

inline void require_not_coherent(double vs) {
  if (!(vs > 0.0)) fail(ErrorCode::DomainError, "V_S must be > 0");
  if (std::abs(vs - 1.0) <= kCoherentTol) {
    fail(ErrorCode::DomainError, "V_S = 1: use the coherent-state expression");
  }
}

}  // namespace detail

inline double asymptotic_key_rate_dr(double vs, double eta) {
  detail::require_not_coherent(vs);
  detail::require_open_unit(eta);
  const double c = std::sqrt((1.0 + eta * (1.0 / vs - 1.0)) * (1.0 + eta * (vs - 1.0)));
  const double d = eta * std::abs(1.0 - vs);
  return std::numbers::log2e * (c * std::atanh(1.0 / c) - 1.0) + std::log2(d / (1.0 + d));
}

inline double asymptotic_key_rate_dr_coherent(double eta) {
  detail::require_open_unit(eta);
  return std::log2(2.0 * eta) - 0.5 * std::log2(eta * (1.0 - eta)) - std::numbers::log2e;
}

inline double asymptotic_key_rate_rr(double vs, double eta) {
  detail::require_not_coherent(vs);
  detail::require_open_unit(eta);
  const double d = std::sqrt((1.0 + eta * (vs - 1.0)) / (eta * vs));
  if (d <= 1.0 + 1e-12) fail(ErrorCode::DomainError, "D <= 1: expression singular");
  return 0.5 * d * (std::log2(0.5 * (d + 1.0)) - std::log2(0.5 * (d - 1.0))) -
         std::log2(1.0 + eta * std::abs(1.0 - vs)) - std::numbers::log2e;
}

inline double asymptotic_key_rate_rr_coherent(double eta) {
  detail::require_open_unit(eta);
  const double root = std::sqrt(eta);
  return (std::atanh(root) / root - 1.0) / std::numbers::ln2;
}

}  // namespace udqkd
