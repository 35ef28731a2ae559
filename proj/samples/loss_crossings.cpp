// Attenuation at which the worst-case key rate reaches zero, for a few
// signal variances, with V_M = 100 and 0.03 SNU excess noise.

#include <cstdio>

#include "udqkd/udqkd.hpp"

int main() {
  using namespace udqkd;
  SweepConfig cfg;
  for (double vs : {0.5, 1.0, 2.0}) {
    for (Direction d : {Direction::Direct, Direction::Reverse}) {
      const ProtocolParams p{vs, 100.0, 1.0};
      try {
        const double db = max_attenuation(p, 0.03, d, cfg);
        std::printf("V_S=%-4g %s  %7.3f dB  (%.1f km at 0.2 dB/km)\n", vs, to_string(d).data(), db, db / 0.2);
      } catch (const Error& e) {
        std::printf("V_S=%-4g %s  %s\n", vs, to_string(d).data(), e.what());
      }
    }
  }
}
