#pragma once

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "secmap.hpp"
#include "sweep.hpp"

namespace thzsec::io {

/// %.9g, empty for NaN.
inline std::string format_number(double v) {
  if (std::isnan(v)) return {};
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

/// Header `x_m,y_m,delta`, one row per grid point in row-major order.
inline void write_map_csv(std::ostream& os, const SecrecyMapGrid& map) {
  os << "x_m,y_m,delta\n";
  for (std::size_t i = 0; i < map.values.size(); ++i) {
    const Vec3 p = map.grid.at(i);
    os << format_number(p.x) << ',' << format_number(p.y) << ',' << format_number(map.values[i]) << '\n';
  }
}

/// Plain PGM (P2, maxval 255), first image row = lowest y. Secure points are bright.
inline void write_map_pgm(std::ostream& os, const SecrecyMapGrid& map) {
  os << "P2\n" << map.grid.nx() << ' ' << map.grid.ny() << "\n255\n";
  for (std::size_t iy = 0; iy < map.grid.ny(); ++iy) {
    for (std::size_t ix = 0; ix < map.grid.nx(); ++ix) {
      const auto px = static_cast<int>(std::lround(255.0 * (1.0 - map.at(ix, iy))));
      os << px << (ix + 1 == map.grid.nx() ? '\n' : ' ');
    }
  }
}

inline void write_radial_csv(std::ostream& os, const RadialProfile& profile) {
  os << "r_m,delta\n";
  for (std::size_t i = 0; i < profile.radii.size(); ++i) {
    os << format_number(profile.radii[i]) << ',' << format_number(profile.deltas[i]) << '\n';
  }
}

inline void write_sweep_csv(std::ostream& os, SweepVariable variable, const std::vector<SweepRow>& rows) {
  os << "variable,value,feasible,r_b_m,c_ab_bits,l_bits,achieved_phi,r_delta_099_m,r_delta_001_m,"
        "transition_width_m,r_e0_m,insecure_fraction\n";
  for (const SweepRow& r : rows) {
    os << to_string(variable) << ',' << format_number(r.value) << ',' << (r.feasible ? 1 : 0) << ','
       << format_number(r.r_b_m) << ',' << format_number(r.c_ab_bits) << ',' << format_number(r.l_bits) << ','
       << format_number(r.achieved_phi) << ',' << format_number(r.r_delta_099_m) << ','
       << format_number(r.r_delta_001_m) << ',' << format_number(r.transition_width_m) << ','
       << format_number(r.r_e0_m) << ',' << format_number(r.insecure_fraction) << '\n';
  }
}

}  // namespace thzsec::io
