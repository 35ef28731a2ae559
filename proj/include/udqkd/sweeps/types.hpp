#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "udqkd/errors.hpp"
#include "udqkd/protocol/params.hpp"
#include "udqkd/protocol/security.hpp"
#include "udqkd/sweeps/parallel.hpp"

namespace udqkd {

/// Uniform grid over [lo, hi] with `points` samples, both ends included.
struct Grid {
  double lo = 0.0;
  double hi = 1.0;
  std::size_t points = 2;

  /// Grid from a `lo:hi:step` triple; the last point is the largest
  /// lo + k*step not exceeding hi (up to 1e-9 relative slack).
  static Grid from_step(double lo, double hi, double step) {
    if (!(step > 0.0) || !(hi > lo)) fail(ErrorCode::ConfigError, "range needs lo < hi and step > 0");
    const auto k = static_cast<std::size_t>(std::floor((hi - lo) / step * (1.0 + 1e-9) + 1e-9));
    return Grid{lo, lo + static_cast<double>(k) * step, k + 1};
  }

  void validate() const {
    if (points < 2) fail(ErrorCode::ConfigError, "grid resolution must be >= 2");
    if (!(hi > lo) || !std::isfinite(lo) || !std::isfinite(hi)) {
      fail(ErrorCode::ConfigError, "grid range must satisfy lo < hi");
    }
  }

  double at(std::size_t i) const {
    if (i + 1 == points) return hi;
    return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
  }

  std::vector<double> values() const {
    std::vector<double> v(points);
    for (std::size_t i = 0; i < points; ++i) v[i] = at(i);
    return v;
  }
};

enum class RegionMode { FreeVpB, SymmetricNoise };

/// Cell codes as written to region JSON files.
enum class CellClass : std::uint8_t {
  Unphysical = 0,
  PhysicalInsecure = 1,
  SecureDR = 2,
  SecureRR = 3,
  SecureBoth = 4,
};

constexpr bool is_physical_cell(CellClass c) noexcept { return c != CellClass::Unphysical; }

struct SweepConfig {
  Grid x_axis{0.5, 3.0, 400};     ///< V_p^B (FreeVpB) or eps_p (SymmetricNoise)
  Grid cp_axis{-4.0, 1.0, 400};   ///< C_p
  Grid db_axis{0.0, 3.0, 200};    ///< attenuation in dB for curves
  double noise_tol = 1e-6;        ///< |d eps| for max_tolerable_noise
  double db_tol = 1e-4;           ///< |d dB| for max_attenuation
  double noise_cap = 10.0;
  double db_cap = 60.0;
  double db_march_step = 0.25;
  VpbConvention convention = VpbConvention::VacuumRestored;
  WorstCaseSearch search{};
  std::size_t threads = default_thread_count();

  void validate() const {
    x_axis.validate();
    cp_axis.validate();
    db_axis.validate();
    if (!(noise_tol > 0.0) || !(db_tol > 0.0) || !(db_march_step > 0.0)) {
      fail(ErrorCode::ConfigError, "tolerances must be > 0");
    }
    if (!(noise_cap > 0.1) || !(db_cap > 0.0)) fail(ErrorCode::ConfigError, "search caps too small");
    if (search.grid_points < 2) fail(ErrorCode::ConfigError, "worst-case grid needs >= 2 points");
  }
};

/// Classification of the (x, C_p) plane. `cells` is row-major with C_p as
/// the row index: cells[iy * x.size() + ix].
struct RegionMap {
  RegionMode mode = RegionMode::FreeVpB;
  std::vector<double> x;
  std::vector<double> cp;
  std::vector<CellClass> cells;

  CellClass at(std::size_t ix, std::size_t iy) const { return cells[iy * x.size() + ix]; }
};

struct Curve {
  std::string abscissa_name;
  std::string ordinate_name;
  std::vector<double> abscissa;
  std::vector<std::optional<double>> ordinate;  ///< nullopt where undefined
  ProtocolParams params;
  Direction direction = Direction::Direct;
};

}  // namespace udqkd
