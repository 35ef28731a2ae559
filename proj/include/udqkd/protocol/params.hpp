#pragma once

#include <cmath>
#include <string>
#include <string_view>

#include "udqkd/errors.hpp"

namespace udqkd {

/// Signal source and modulation. `vs` < 1 squeezed, = 1 coherent, > 1
/// antisqueezed in the modulated quadrature; all in shot-noise units.
struct ProtocolParams {
  double vs = 1.0;    ///< signal variance in the modulated quadrature
  double vm = 0.0;    ///< modulation variance
  double beta = 1.0;  ///< reconciliation efficiency, (0, 1]

  void validate() const {
    if (!(vs > 0.0) || !std::isfinite(vs)) fail(ErrorCode::InvalidParameter, "V_S must be > 0");
    if (!(vm >= 0.0) || !std::isfinite(vm)) fail(ErrorCode::InvalidParameter, "V_M must be >= 0");
    if (!(beta > 0.0 && beta <= 1.0)) fail(ErrorCode::InvalidParameter, "beta must lie in (0, 1]");
  }

  /// Variance of the purifying two-mode squeezed vacuum, sqrt(1 + V_M/V_S).
  double tmsv_variance() const { return std::sqrt(1.0 + vm / vs); }
};

/// Phase-sensitive Gaussian channel; excess noise is referred to the input.
struct ChannelParams {
  double eta_x = 1.0;
  double eta_p = 1.0;
  double eps_x = 0.0;
  double eps_p = 0.0;

  static ChannelParams symmetric(double eta, double eps) { return {eta, eta, eps, eps}; }

  void validate() const {
    if (!(eta_x > 0.0 && eta_x <= 1.0) || !(eta_p > 0.0 && eta_p <= 1.0)) {
      fail(ErrorCode::InvalidParameter, "transmittance must lie in (0, 1]");
    }
    if (!(eps_x >= 0.0) || !(eps_p >= 0.0) || !std::isfinite(eps_x) || !std::isfinite(eps_p)) {
      fail(ErrorCode::InvalidParameter, "excess noise must be >= 0");
    }
  }
};

/// Quantities the trusted parties estimate. The p-correlation is absent on
/// purpose: it is not observed.
struct ObservedStats {
  double vx_b = 1.0;  ///< Bob's modulated-quadrature variance
  double vp_b = 1.0;  ///< Bob's unmodulated-quadrature variance
  double c_x = 0.0;   ///< x-quadrature correlation

  static ObservedStats expected(const ProtocolParams& params, const ChannelParams& chan) {
    const double v = params.tmsv_variance();
    ObservedStats s;
    s.vx_b = chan.eta_x * (params.vs + params.vm + chan.eps_x) + 1.0 - chan.eta_x;
    s.vp_b = chan.eta_p * (1.0 / params.vs + chan.eps_p) + 1.0 - chan.eta_p;
    s.c_x = std::sqrt(chan.eta_x * params.vm * v);
    return s;
  }
};

enum class Direction { Direct, Reverse };

constexpr std::string_view to_string(Direction d) noexcept {
  return d == Direction::Direct ? "dr" : "rr";
}

/// How Bob's unmodulated-quadrature variance is modelled for a symmetric
/// channel. `VacuumRestored` keeps the (1 - eta) vacuum term of the general
/// channel map; `StrictPaper` drops it.
enum class VpbConvention { VacuumRestored, StrictPaper };

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double width() const noexcept { return hi - lo; }
  bool contains(double x) const noexcept { return x >= lo && x <= hi; }
};

struct SecurityAssessment {
  double mutual_info = 0.0;
  double holevo = 0.0;
  double key_rate = 0.0;
  double worst_cp = 0.0;
  Interval cp_interval;
  bool physical = false;
  Direction direction = Direction::Direct;
};

/// Channel attenuation in dB to transmittance.
inline double db_to_eta(double db) { return std::pow(10.0, -db / 10.0); }
inline double eta_to_db(double eta) { return -10.0 * std::log10(eta); }

}  // namespace udqkd
