#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>

#include "udqkd/errors.hpp"
#include "udqkd/protocol/params.hpp"
#include "udqkd/protocol/security.hpp"
#include "udqkd/sweeps/parallel.hpp"
#include "udqkd/sweeps/types.hpp"

namespace udqkd {

/// Worst-case key rate of the symmetric channel, or nullopt when the
/// observed V_p^B admits no physical C_p.
inline std::optional<SecurityAssessment> try_symmetric_key_rate(const ProtocolParams& params, double eta, double eps,
                                                                Direction dir, const SweepConfig& config) {
  const double vp_b = symmetric_vpb(params, eta, eps, config.convention);
  const ChannelParams chan = ChannelParams::symmetric(eta, eps);
  if (!physicality_interval(params, chan, vp_b)) return std::nullopt;
  return key_rate(params, chan, vp_b, dir, config.search);
}

namespace detail {

/// Key rate where an empty physicality interval counts as insecure.
inline double rate_or_minus_inf(const ProtocolParams& params, double eta, double eps, Direction dir,
                                const SweepConfig& config) {
  const auto r = try_symmetric_key_rate(params, eta, eps, dir, config);
  return r ? r->key_rate : -std::numeric_limits<double>::infinity();
}

/// Bisection on a bracket with f(lo) > 0 >= f(hi); returns the bracket
/// midpoint once hi - lo <= tol.
template <class F>
double bisect_sign_change(F&& f, double lo, double hi, double tol) {
  for (int iter = 0; hi - lo > tol && iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace detail

/// Worst-case key rate versus attenuation for a symmetric channel with
/// excess noise `eps` in both quadratures.
inline Curve keyrate_vs_attenuation(const ProtocolParams& params, double eps, const Grid& db_axis, Direction dir,
                                    const SweepConfig& config) {
  params.validate();
  db_axis.validate();
  if (!(db_axis.lo >= 0.0)) fail(ErrorCode::ConfigError, "attenuation must be >= 0 dB");
  if (!(eps >= 0.0)) fail(ErrorCode::InvalidParameter, "excess noise must be >= 0");

  Curve curve;
  curve.abscissa_name = "attenuation_db";
  curve.ordinate_name = "key_rate";
  curve.abscissa = db_axis.values();
  curve.ordinate.assign(curve.abscissa.size(), std::nullopt);
  curve.params = params;
  curve.direction = dir;
  parallel_for(curve.abscissa.size(), config.threads, [&](std::size_t i) {
    const auto r = try_symmetric_key_rate(params, db_to_eta(curve.abscissa[i]), eps, dir, config);
    if (r) curve.ordinate[i] = r->key_rate;
  });
  return curve;
}

/// Largest symmetric excess noise with a positive worst-case key rate at the
/// given attenuation. The upper bracket starts at 0.1 and doubles up to
/// `config.noise_cap`.
inline double max_tolerable_noise(const ProtocolParams& params, double db, Direction dir, double tol,
                                  const SweepConfig& config) {
  params.validate();
  if (!(db >= 0.0)) fail(ErrorCode::InvalidParameter, "attenuation must be >= 0 dB");
  if (!(tol > 0.0)) fail(ErrorCode::InvalidParameter, "tolerance must be > 0");
  const double eta = db_to_eta(db);
  const auto rate = [&](double eps) { return detail::rate_or_minus_inf(params, eta, eps, dir, config); };

  if (!(rate(0.0) > 0.0)) {
    fail(ErrorCode::NoPositiveRate, "no positive key rate at zero excess noise");
  }
  double lo = 0.0;
  double hi = 0.1;
  while (rate(hi) > 0.0) {
    if (hi >= config.noise_cap) fail(ErrorCode::NoRoot, "key rate still positive at the noise cap");
    lo = hi;
    hi = std::min(2.0 * hi, config.noise_cap);
  }
  return detail::bisect_sign_change(rate, lo, hi, tol);
}

inline double max_tolerable_noise(const ProtocolParams& params, double db, Direction dir,
                                  const SweepConfig& config) {
  return max_tolerable_noise(params, db, dir, config.noise_tol, config);
}

/// Attenuation (dB) at which the worst-case key rate first reaches zero.
/// The sign change is bracketed by marching in `config.db_march_step`
/// increments from 0 dB up to `config.db_cap`, then bisected.
inline double max_attenuation(const ProtocolParams& params, double eps, Direction dir, double tol,
                              const SweepConfig& config) {
  params.validate();
  if (!(eps >= 0.0)) fail(ErrorCode::InvalidParameter, "excess noise must be >= 0");
  if (!(tol > 0.0)) fail(ErrorCode::InvalidParameter, "tolerance must be > 0");
  const auto rate = [&](double db) { return detail::rate_or_minus_inf(params, db_to_eta(db), eps, dir, config); };

  if (!(rate(0.0) > 0.0)) fail(ErrorCode::NoPositiveRate, "no positive key rate at 0 dB");
  double prev = 0.0;
  for (std::size_t k = 1;; ++k) {
    const double db = std::min(static_cast<double>(k) * config.db_march_step, config.db_cap);
    if (!(rate(db) > 0.0)) return detail::bisect_sign_change(rate, prev, db, tol);
    if (db >= config.db_cap) break;
    prev = db;
  }
  fail(ErrorCode::NoRoot, "key rate positive up to the attenuation cap");
}

inline double max_attenuation(const ProtocolParams& params, double eps, Direction dir, const SweepConfig& config) {
  return max_attenuation(params, eps, dir, config.db_tol, config);
}

/// Maximal tolerable noise over an attenuation grid; points with no positive
/// rate (or no root below the cap) are left empty.
inline Curve max_noise_vs_attenuation(const ProtocolParams& params, const Grid& db_axis, Direction dir,
                                      const SweepConfig& config) {
  params.validate();
  db_axis.validate();
  if (!(db_axis.lo >= 0.0)) fail(ErrorCode::ConfigError, "attenuation must be >= 0 dB");
  Curve curve;
  curve.abscissa_name = "attenuation_db";
  curve.ordinate_name = "eps_max";
  curve.abscissa = db_axis.values();
  curve.ordinate.assign(curve.abscissa.size(), std::nullopt);
  curve.params = params;
  curve.direction = dir;
  parallel_for(curve.abscissa.size(), config.threads, [&](std::size_t i) {
    try {
      curve.ordinate[i] = max_tolerable_noise(params, curve.abscissa[i], dir, config);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NoPositiveRate && e.code() != ErrorCode::NoRoot) throw;
    }
  });
  return curve;
}

}  // namespace udqkd
