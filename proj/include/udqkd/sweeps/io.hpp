#pragma once

#include <cstdio>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "udqkd/sweeps/types.hpp"
#include "udqkd/version.hpp"

namespace udqkd {

/// Ordered key/value parameter echo written at the top of every output.
using Provenance = std::vector<std::pair<std::string, std::string>>;

/// 12 significant digits, `.` decimal point.
inline std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

/// CSV: `#` provenance lines, a header row, one row per abscissa. Undefined
/// ordinates are written as an empty field.
inline void write_curve_csv(std::ostream& out, const Curve& curve, const Provenance& provenance) {
  out << "# tool=udqkd version=" << kVersion << '\n';
  for (const auto& [key, value] : provenance) out << "# " << key << '=' << value << '\n';
  out << curve.abscissa_name << ',' << curve.ordinate_name << '\n';
  for (std::size_t i = 0; i < curve.abscissa.size(); ++i) {
    out << format_number(curve.abscissa[i]) << ',';
    if (curve.ordinate[i]) out << format_number(*curve.ordinate[i]);
    out << '\n';
  }
}

inline nlohmann::ordered_json provenance_json(const Provenance& provenance) {
  nlohmann::ordered_json p;
  p["tool"] = "udqkd";
  p["version"] = kVersion;
  for (const auto& [key, value] : provenance) p[key] = value;
  return p;
}

inline nlohmann::ordered_json curve_json(const Curve& curve, const Provenance& provenance) {
  nlohmann::ordered_json j;
  j["provenance"] = provenance_json(provenance);
  j["abscissa_name"] = curve.abscissa_name;
  j["ordinate_name"] = curve.ordinate_name;
  j["abscissa"] = curve.abscissa;
  nlohmann::ordered_json ord = nlohmann::ordered_json::array();
  for (const auto& y : curve.ordinate) {
    if (y) {
      ord.push_back(*y);
    } else {
      ord.push_back(nullptr);
    }
  }
  j["ordinate"] = std::move(ord);
  return j;
}

/// Region JSON: axes arrays plus row-major cell codes 0-4, C_p as the row.
inline nlohmann::ordered_json region_json(const RegionMap& map, const Provenance& provenance) {
  nlohmann::ordered_json j;
  j["provenance"] = provenance_json(provenance);
  j["x_name"] = map.mode == RegionMode::FreeVpB ? "vp_b" : "eps_p";
  j["y_name"] = "cp";
  j["x_axis"] = map.x;
  j["y_axis"] = map.cp;
  j["layout"] = "row-major, index = iy * len(x_axis) + ix";
  j["codes"] = {{"0", "Unphysical"}, {"1", "PhysicalInsecure"}, {"2", "SecureDR"}, {"3", "SecureRR"},
                {"4", "SecureBoth"}};
  std::vector<int> cells;
  cells.reserve(map.cells.size());
  for (CellClass c : map.cells) cells.push_back(static_cast<int>(c));
  j["cells"] = std::move(cells);
  return j;
}

}  // namespace udqkd
