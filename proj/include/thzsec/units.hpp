#pragma once

#include <cmath>
#include <numbers>

namespace thzsec {

/// Physical constants (CODATA exact values).
namespace constants {
inline constexpr double boltzmann = 1.380649e-23;     // J/K
inline constexpr double speed_of_light = 299792458.0;  // m/s
}  // namespace constants

inline constexpr double kLn2 = std::numbers::ln2;

inline double db_to_ratio(double db) { return std::pow(10.0, db / 10.0); }
inline double ratio_to_db(double ratio) { return 10.0 * std::log10(ratio); }

inline double dbm_to_watts(double dbm) { return 1e-3 * db_to_ratio(dbm); }
inline double watts_to_dbm(double watts) { return ratio_to_db(watts / 1e-3); }

inline double bits_to_nats(double bits) { return bits * kLn2; }
inline double nats_to_bits(double nats) { return nats / kLn2; }

inline double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }
inline double rad_to_deg(double rad) { return rad * 180.0 / std::numbers::pi; }

}  // namespace thzsec
