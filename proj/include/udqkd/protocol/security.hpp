#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>

#include "udqkd/errors.hpp"
#include "udqkd/gaussian/entropy.hpp"
#include "udqkd/gaussian/homodyne.hpp"
#include "udqkd/gaussian/physicality.hpp"
#include "udqkd/protocol/params.hpp"
#include "udqkd/protocol/states.hpp"

namespace udqkd {

inline constexpr double kHolevoFloorTol = 1e-9;
/// Relative slack below the parabola vertex still treated as the vertex
/// itself; absorbs rounding when V_p^B and V_0^B coincide analytically.
inline constexpr double kVertexTol = 1e-12;

/// Classical mutual information between Alice's modulation and Bob's
/// x-quadrature homodyne data (bits). Same for both directions.
inline double mutual_information(const ProtocolParams& params, const ChannelParams& chan) {
  params.validate();
  chan.validate();
  const double noise = 1.0 + chan.eta_x * (params.vs + chan.eps_x - 1.0);
  return 0.5 * std::log2(1.0 + chan.eta_x * params.vm / noise);
}

/// Bob's p-variance expected from the channel map.
inline double expected_vpb(const ProtocolParams& params, const ChannelParams& chan,
                           VpbConvention convention = VpbConvention::VacuumRestored) {
  params.validate();
  chan.validate();
  const double signal = chan.eta_p * (1.0 / params.vs + chan.eps_p);
  return convention == VpbConvention::VacuumRestored ? signal + 1.0 - chan.eta_p : signal;
}

/// Bob's p-variance in a channel with equal transmittance in both quadratures.
inline double symmetric_vpb(const ProtocolParams& params, double eta, double eps_p,
                            VpbConvention convention = VpbConvention::VacuumRestored) {
  return expected_vpb(params, ChannelParams::symmetric(eta, eps_p), convention);
}

struct ParabolaVertex {
  double vp_b = 0.0;
  double c_p = 0.0;
};

/// Vertex of the physicality parabola in the (V_p^B, C_p) plane.
inline ParabolaVertex parabola_vertex(const ProtocolParams& params, const ChannelParams& chan) {
  params.validate();
  chan.validate();
  const double v0 = 1.0 / (1.0 + chan.eta_x * (params.vs + chan.eps_x - 1.0));
  const double c0 = -v0 * std::sqrt(chan.eta_x * params.vm) / std::pow(params.vm / params.vs + 1.0, 0.25);
  return {v0, c0};
}

/// Curvature coefficient of the parabola: (C_p - C_0)^2 <= coeff * (V_p^B - V_0^B).
inline double parabola_coefficient(const ProtocolParams& params, const ChannelParams& chan) {
  const ParabolaVertex vertex = parabola_vertex(params, chan);
  const double scale = params.vm / std::sqrt(params.vs * (params.vs + params.vm));
  return scale * (1.0 - chan.eta_x * params.vs * vertex.vp_b);
}

/// Range of p-correlations compatible with the uncertainty principle for an
/// observed V_p^B; empty when V_p^B lies below the parabola vertex.
inline std::optional<Interval> physicality_interval(const ProtocolParams& params, const ChannelParams& chan,
                                                    double vp_b) {
  if (!(vp_b > 0.0)) fail(ErrorCode::InvalidParameter, "V_p^B must be > 0");
  const ParabolaVertex vertex = parabola_vertex(params, chan);
  if (vp_b < vertex.vp_b - kVertexTol * std::max(1.0, vertex.vp_b)) return std::nullopt;
  const double coeff = std::max(0.0, parabola_coefficient(params, chan));
  const double half_width = std::sqrt(coeff * std::max(0.0, vp_b - vertex.vp_b));
  return Interval{vertex.c_p - half_width, vertex.c_p + half_width};
}

namespace detail {

inline double floor_holevo(double chi) {
  if (chi >= 0.0) return chi;
  if (chi >= -kHolevoFloorTol) return 0.0;
  fail(ErrorCode::InternalConsistency, "Holevo quantity negative: " + std::to_string(chi));
}

inline QuadratureSelector reference_measurement(Direction dir) {
  // DR: Alice's x outcome conditions Bob's mode; RR: Bob's x conditions Alice's.
  return {Quadrature::X, dir == Direction::Direct ? std::size_t{0} : std::size_t{1}};
}

/// Entropy of a state already known to be physical at kPhysicalityTol:
/// symplectic eigenvalues a rounding error below 1 count as 1.
inline double physical_entropy(const CovMatrix& gamma) {
  double s = 0.0;
  for (double nu : symplectic_eigenvalues(gamma)) s += entropy_g(std::max(nu, 1.0));
  return s;
}

/// Conditional entropy S(B|A) or S(A|B); independent of C_p.
inline double conditional_entropy(const CovMatrix& shared, Direction dir) {
  return physical_entropy(condition_on_homodyne(shared, reference_measurement(dir)));
}

}  // namespace detail

/// Holevo bound chi_AE (DR) or chi_BE (RR) for a given p-correlation, with
/// Eve holding the purification: chi = S(AB) - S(B|A) or S(AB) - S(A|B).
inline double holevo_bound(const ProtocolParams& params, const ChannelParams& chan, double c_p, double vp_b,
                           Direction dir) {
  params.validate();
  chan.validate();
  if (!(vp_b > 0.0)) fail(ErrorCode::InvalidParameter, "V_p^B must be > 0");
  const CovMatrix shared = channel_output_state(params, chan, vp_b, c_p);
  if (!is_physical(shared, kPhysicalityTol)) {
    fail(ErrorCode::UnphysicalState, "shared state violates the uncertainty principle");
  }
  return detail::floor_holevo(detail::physical_entropy(shared) - detail::conditional_entropy(shared, dir));
}

struct WorstCaseSearch {
  std::size_t grid_points = 1001;
  double refine_tol = 1e-10;
};

/// Worst-case key rate: beta*I_AB minus the largest Holevo bound over every
/// C_p the physicality constraint leaves open.
///
/// The maximum is located on a uniform grid (endpoints included) and then
/// refined by golden-section search between the neighbours of the best grid
/// point. Throws `UnphysicalObservation` when the interval is empty.
inline SecurityAssessment key_rate(const ProtocolParams& params, const ChannelParams& chan, double vp_b,
                                   Direction dir, const WorstCaseSearch& search = {}) {
  params.validate();
  chan.validate();
  const std::optional<Interval> interval = physicality_interval(params, chan, vp_b);
  if (!interval) {
    fail(ErrorCode::UnphysicalObservation, "observed V_p^B below the physicality vertex");
  }

  // S(B|A) and S(A|B) do not involve C_p; compute once.
  const double s_cond = detail::conditional_entropy(channel_output_state(params, chan, vp_b, interval->lo), dir);
  const auto chi = [&](double c_p) {
    return detail::floor_holevo(detail::physical_entropy(channel_output_state(params, chan, vp_b, c_p)) - s_cond);
  };

  double best_cp = interval->lo;
  double best_chi = chi(best_cp);
  const double width = interval->width();
  if (width > 0.0) {
    const std::size_t n = std::max<std::size_t>(search.grid_points, 2);
    std::size_t best_i = 0;
    for (std::size_t i = 1; i < n; ++i) {
      const double c =
          i + 1 == n ? interval->hi : interval->lo + width * static_cast<double>(i) / static_cast<double>(n - 1);
      const double val = chi(c);
      if (val > best_chi) {
        best_chi = val;
        best_cp = c;
        best_i = i;
      }
    }

    const double step = width / static_cast<double>(n - 1);
    double a = std::max(interval->lo, best_cp - step);
    double b = std::min(interval->hi, best_cp + step);
    if (best_i == 0) a = interval->lo;
    if (best_i + 1 == n) b = interval->hi;
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = chi(x1);
    double f2 = chi(x2);
    for (int iter = 0; b - a > search.refine_tol && iter < 200; ++iter) {
      if (f1 < f2) {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = a + inv_phi * (b - a);
        f2 = chi(x2);
      } else {
        b = x2;
        x2 = x1;
        f2 = f1;
        x1 = b - inv_phi * (b - a);
        f1 = chi(x1);
      }
    }
    const double refined = f1 > f2 ? x1 : x2;
    const double refined_chi = std::max(f1, f2);
    if (refined_chi > best_chi) {
      best_chi = refined_chi;
      best_cp = refined;
    }
  }

  SecurityAssessment out;
  out.mutual_info = mutual_information(params, chan);
  out.holevo = best_chi;
  out.key_rate = params.beta * out.mutual_info - out.holevo;
  out.worst_cp = best_cp;
  out.cp_interval = *interval;
  out.physical = true;
  out.direction = dir;
  return out;
}

/// Key rate of a symmetric channel (eta_x = eta_p, eps_x = eps_p), V_p^B
/// derived under the given convention.
inline SecurityAssessment symmetric_key_rate(const ProtocolParams& params, double eta, double eps, Direction dir,
                                             VpbConvention convention = VpbConvention::VacuumRestored,
                                             const WorstCaseSearch& search = {}) {
  return key_rate(params, ChannelParams::symmetric(eta, eps), symmetric_vpb(params, eta, eps, convention), dir,
                  search);
}

}  // namespace udqkd
