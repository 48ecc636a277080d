#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

#include "errors.hpp"
#include "units.hpp"

namespace thzsec {

/// Directional antenna with a Gaussian main lobe.
///
/// The half-power beamwidth follows theta3dB = sqrt(kappa / G) (degrees, G linear),
/// clamped to 180 degrees. A fixed beamwidth can be pinned with
/// `beamwidth_override_deg` to reproduce a known cell radius.
struct Antenna {
  double boresight_gain_dbi = 10.0;
  double kappa_deg2 = 41253.0;
  /// Sidelobe floor relative to boresight; -inf disables the floor.
  double min_relative_gain_db = -std::numeric_limits<double>::infinity();
  std::optional<double> beamwidth_override_deg;

  double boresight_gain() const { return db_to_ratio(boresight_gain_dbi); }

  void validate() const {
    detail::require_non_negative(boresight_gain_dbi, "boresight_gain");
    detail::require_positive(kappa_deg2, "kappa");
    if (beamwidth_override_deg && !(*beamwidth_override_deg > 0.0 && *beamwidth_override_deg <= 180.0)) {
      throw DomainError("beamwidth override must lie in (0, 180] degrees");
    }
    if (std::isnan(min_relative_gain_db) || min_relative_gain_db > 0.0) {
      throw DomainError("min_relative_gain must be <= 0 dB");
    }
  }
};

/// Full half-power beamwidth in degrees.
inline double beamwidth_from_gain(const Antenna& antenna) {
  antenna.validate();
  if (antenna.beamwidth_override_deg) return *antenna.beamwidth_override_deg;
  return std::min(180.0, std::sqrt(antenna.kappa_deg2 / antenna.boresight_gain()));
}

/// Effective gain (linear) at `offset_rad` from boresight.
inline double pattern_gain(const Antenna& antenna, double offset_rad) {
  if (!(offset_rad >= 0.0 && offset_rad <= std::numbers::pi)) {
    throw DomainError("offset angle must lie in [0, pi]");
  }
  const double g0 = antenna.boresight_gain();
  const double half_power = deg_to_rad(beamwidth_from_gain(antenna));
  const double x = offset_rad / half_power;
  // exp(-4 ln2 x^2) == 2^(-4 x^2): exactly 1/2 at x = 1/2.
  const double relative = std::exp2(-4.0 * x * x);
  const double floor = std::isinf(antenna.min_relative_gain_db) ? 0.0 : db_to_ratio(antenna.min_relative_gain_db);
  return g0 * std::max(relative, floor);
}

/// Floor radius of the 3 dB cone for a downward-facing antenna `height_difference_m` above the receiver plane.
inline double cone_radius(const Antenna& antenna, double height_difference_m) {
  detail::require_positive(height_difference_m, "height difference");
  const double theta = beamwidth_from_gain(antenna);
  if (theta >= 180.0) {
    throw InfeasibleGeometry("3 dB cone of a beamwidth >= 180 deg never meets the floor");
  }
  return height_difference_m * std::tan(deg_to_rad(theta) / 2.0);
}

/// Beamwidth that makes the 3 dB cone meet the floor at `radius_m`.
inline double beamwidth_for_cone_radius(double radius_m, double height_difference_m) {
  detail::require_positive(radius_m, "radius");
  detail::require_positive(height_difference_m, "height difference");
  return rad_to_deg(2.0 * std::atan(radius_m / height_difference_m));
}

}  // namespace thzsec
