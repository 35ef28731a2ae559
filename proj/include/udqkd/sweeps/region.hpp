#pragma once

#include <cstddef>

#include "udqkd/gaussian/entropy.hpp"
#include "udqkd/gaussian/physicality.hpp"
#include "udqkd/protocol/security.hpp"
#include "udqkd/protocol/states.hpp"
#include "udqkd/sweeps/parallel.hpp"
#include "udqkd/sweeps/types.hpp"

namespace udqkd {

/// x-quadrature channel parameters; the p-quadrature enters a region scan
/// only through the x axis.
struct XChannel {
  double eta = 1.0;
  double eps = 0.0;
};

/// Classifies every (x, C_p) cell by physicality and by the sign of the DR
/// and RR key rates at that exact C_p. In SymmetricNoise mode x is eps_p and
/// V_p^B follows from `symmetric_vpb` with eta_p = eta_x.
inline RegionMap scan_region(const ProtocolParams& params, const XChannel& chan_x, const SweepConfig& config,
                             RegionMode mode) {
  params.validate();
  config.validate();
  const ChannelParams base{chan_x.eta, chan_x.eta, chan_x.eps, chan_x.eps};
  base.validate();
  if (mode == RegionMode::SymmetricNoise && config.x_axis.lo < 0.0) {
    fail(ErrorCode::ConfigError, "excess-noise axis must start at >= 0");
  }
  if (mode == RegionMode::FreeVpB && !(config.x_axis.lo > 0.0)) {
    fail(ErrorCode::ConfigError, "V_p^B axis must be > 0");
  }

  RegionMap map;
  map.mode = mode;
  map.x = config.x_axis.values();
  map.cp = config.cp_axis.values();
  const std::size_t nx = map.x.size();
  const std::size_t ny = map.cp.size();
  map.cells.assign(nx * ny, CellClass::Unphysical);

  const double mutual = mutual_information(params, base);
  const double keep = params.beta * mutual;

  parallel_for(nx, config.threads, [&](std::size_t ix) {
    const double vp_b = mode == RegionMode::FreeVpB ? map.x[ix]
                                                    : symmetric_vpb(params, chan_x.eta, map.x[ix], config.convention);
    // Conditional entropies do not depend on C_p; any physical C_p will do.
    double s_dr = 0.0;
    double s_rr = 0.0;
    bool have_conditional = false;
    for (std::size_t iy = 0; iy < ny; ++iy) {
      const CovMatrix shared = channel_output_state(params, base, vp_b, map.cp[iy]);
      if (!is_physical(shared, kPhysicalityTol)) continue;
      if (!have_conditional) {
        s_dr = detail::conditional_entropy(shared, Direction::Direct);
        s_rr = detail::conditional_entropy(shared, Direction::Reverse);
        have_conditional = true;
      }
      const double s_ab = detail::physical_entropy(shared);
      const bool dr = keep - detail::floor_holevo(s_ab - s_dr) > 0.0;
      const bool rr = keep - detail::floor_holevo(s_ab - s_rr) > 0.0;
      CellClass c = CellClass::PhysicalInsecure;
      if (dr && rr) {
        c = CellClass::SecureBoth;
      } else if (dr) {
        c = CellClass::SecureDR;
      } else if (rr) {
        c = CellClass::SecureRR;
      }
      map.cells[iy * nx + ix] = c;
    }
  });
  return map;
}

}  // namespace udqkd
