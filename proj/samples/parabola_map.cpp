// Prints a coarse ASCII map of the (V_p^B, C_p) plane for a coherent
// source: '.' unphysical, '-' insecure, 'd'/'r'/'#' secure under DR/RR/both.

#include <cstdio>

#include "udqkd/udqkd.hpp"

int main() {
  using namespace udqkd;
  SweepConfig cfg;
  cfg.x_axis = {0.5, 3.0, 72};
  cfg.cp_axis = {-4.0, 1.0, 30};
  const RegionMap map = scan_region({1.0, 10.0, 1.0}, {0.9, 0.03}, cfg, RegionMode::FreeVpB);
  const char glyph[] = {'.', '-', 'd', 'r', '#'};
  for (std::size_t iy = map.cp.size(); iy-- > 0;) {
    std::printf("%6.2f ", map.cp[iy]);
    for (std::size_t ix = 0; ix < map.x.size(); ++ix) {
      std::putchar(glyph[static_cast<int>(map.at(ix, iy))]);
    }
    std::putchar('\n');
  }
  std::printf("       V_p^B from %g to %g\n", map.x.front(), map.x.back());
}
