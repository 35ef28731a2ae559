#pragma once

#include <cmath>

#include "udqkd/gaussian/cov_matrix.hpp"
#include "udqkd/protocol/params.hpp"

namespace udqkd {

/// Entanglement-based source: a two-mode squeezed vacuum of variance
/// V = sqrt(1 + V_M/V_S) with mode B squeezed so that its reduced state is
/// diag(V_S + V_M, 1/V_S). Homodyning x on mode A leaves diag(V_S, 1/V_S).
inline CovMatrix build_eb_state(const ProtocolParams& params) {
  params.validate();
  const double v = params.tmsv_variance();
  const double v2m1 = params.vm / params.vs;  // V^2 - 1
  const double cx = std::sqrt(v * params.vs * v2m1);
  const double cp = -std::sqrt(v2m1 / (v * params.vs));
  return CovMatrix(2, {
      v,   0.0, cx,                    0.0,
      0.0, v,   0.0,                   cp,
      cx,  0.0, params.vs + params.vm, 0.0,
      0.0, cp,  0.0,                   1.0 / params.vs,
  });
}

/// p-correlation of the noiseless, lossless shared state.
inline double pure_state_cp(const ProtocolParams& params) {
  const double v = params.tmsv_variance();
  return -std::sqrt((params.vm / params.vs) / (v * params.vs));
}

/// Shared state after the channel with Bob's p-variance and the unknown
/// p-correlation supplied explicitly. Only eta_x and eps_x enter.
inline CovMatrix channel_output_state(const ProtocolParams& params, const ChannelParams& chan,
                                      double vp_b, double c_p) {
  const double v = params.tmsv_variance();
  const double cx = std::sqrt(chan.eta_x * params.vm) * std::sqrt(v);
  const double vx_b = chan.eta_x * (params.vs + params.vm + chan.eps_x) + 1.0 - chan.eta_x;
  return CovMatrix(2, {
      v,   0.0, cx,   0.0,
      0.0, v,   0.0,  c_p,
      cx,  0.0, vx_b, 0.0,
      0.0, c_p, 0.0,  vp_b,
  });
}

/// Shared state after the phase-sensitive channel, Bob's p-variance taken
/// from the channel map eta_p(1/V_S + eps_p) + 1 - eta_p.
inline CovMatrix apply_channel(const ProtocolParams& params, const ChannelParams& chan, double c_p) {
  params.validate();
  chan.validate();
  return channel_output_state(params, chan, ObservedStats::expected(params, chan).vp_b, c_p);
}

}  // namespace udqkd
