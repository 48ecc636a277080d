#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "antenna.hpp"
#include "errors.hpp"
#include "linkmodel.hpp"

namespace thzsec {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend Vec3 operator+(const Vec3& a, const Vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend Vec3 operator*(double s, const Vec3& a) { return {s * a.x, s * a.y, s * a.z}; }
  friend bool operator==(const Vec3&, const Vec3&) = default;
};

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

inline Vec3 normalized(const Vec3& a) {
  const double n = norm(a);
  if (!(n > 0.0)) throw DomainError("cannot normalize a zero vector");
  return (1.0 / n) * a;
}

/// Angle in [0, pi] between `boresight` and the direction from `from` to `to`.
inline double offset_angle(const Vec3& boresight, const Vec3& from, const Vec3& to) {
  const Vec3 d = to - from;
  if (norm(d) == 0.0) throw DomainError("offset angle undefined for coincident points");
  // atan2 form stays accurate near 0 and pi, unlike acos of the normalized dot product.
  return std::atan2(norm(cross(boresight, d)), dot(boresight, d));
}

enum class ScenarioVariant { Cell, Directed };

inline const char* to_string(ScenarioVariant v) { return v == ScenarioVariant::Cell ? "cell" : "directed"; }

/// Axis-aligned floor rectangle, meters.
struct RoomExtent {
  double x_min = -30.0;
  double x_max = 30.0;
  double y_min = -30.0;
  double y_max = 30.0;

  double width() const { return x_max - x_min; }
  double depth() const { return y_max - y_min; }
  bool contains(double x, double y) const { return x >= x_min && x <= x_max && y >= y_min && y <= y_max; }
};

/// Everything needed to place Alice, Bob and the candidate eavesdroppers.
///
/// Cell: Alice hangs `height_difference_m` above the receiver plane at the floor
/// origin (0, 0), facing down. Directed: Alice sits on the wall x = room.x_min at
/// y = room center and is aimed at Bob, who stands `horizontal_distance_m` into the room.
struct ScenarioConfig {
  ScenarioVariant variant = ScenarioVariant::Cell;
  RoomExtent room;
  double height_difference_m = 3.5;
  double horizontal_distance_m = 15.0;  // Directed only
  double receiver_height_m = 1.0;
  double transmitter_setback_m = 0.5;  // Cell only, below the ceiling
  Antenna alice;
  Antenna bob;
  Antenna eve;
  double transmit_power_w = 9e-3;
  RadioEnvironment environment;

  void validate() const {
    if (!(room.x_max > room.x_min && room.y_max > room.y_min)) throw DomainError("room extent is empty");
    detail::require_positive(height_difference_m, "height difference");
    detail::require_non_negative(receiver_height_m, "receiver height");
    detail::require_non_negative(transmitter_setback_m, "transmitter setback");
    detail::require_positive(transmit_power_w, "transmit power");
    if (variant == ScenarioVariant::Directed) detail::require_positive(horizontal_distance_m, "horizontal distance");
    alice.validate();
    bob.validate();
    eve.validate();
    environment.validate();
  }

  double ceiling_height_m() const { return receiver_height_m + height_difference_m + transmitter_setback_m; }
};

struct NodePlacement {
  Vec3 position;
  Vec3 boresight;  // unit norm
  Antenna antenna;
};

struct ScenarioPlacement {
  NodePlacement alice;
  NodePlacement bob;
};

/// Alice's placement, independent of where Bob stands (Cell) or aimed at the
/// configured Bob position (Directed).
inline Vec3 alice_position(const ScenarioConfig& config) {
  if (config.variant == ScenarioVariant::Cell) {
    return {0.0, 0.0, config.receiver_height_m + config.height_difference_m};
  }
  const double yc = 0.5 * (config.room.y_min + config.room.y_max);
  return {config.room.x_min, yc, config.receiver_height_m + config.height_difference_m};
}

/// Places Alice and Bob.
///
/// `bob_offset` is the horizontal offset of Bob from Alice's floor projection (Cell),
/// or from the wall foot below Alice (Directed, usually {d_AB, 0}).
inline ScenarioPlacement build_scenario(const ScenarioConfig& config, std::array<double, 2> bob_offset) {
  config.validate();
  const Vec3 a = alice_position(config);
  const Vec3 b{a.x + bob_offset[0], a.y + bob_offset[1], config.receiver_height_m};

  ScenarioPlacement out;
  if (config.variant == ScenarioVariant::Cell) {
    const double r_b = cone_radius(config.alice, config.height_difference_m);
    const double r = std::hypot(bob_offset[0], bob_offset[1]);
    // Small slack so that Bob placed exactly on the computed edge is accepted.
    if (r > r_b * (1.0 + 1e-12)) {
      throw OutOfCell("Bob offset " + std::to_string(r) + " m exceeds cell radius " + std::to_string(r_b) + " m");
    }
    out.alice = {a, {0.0, 0.0, -1.0}, config.alice};
  } else {
    if (!config.room.contains(b.x, b.y)) throw DomainError("Bob lies outside the room");
    out.alice = {a, normalized(b - a), config.alice};
  }
  out.bob = {b, normalized(a - b), config.bob};
  return out;
}

/// Convenience overload: Cell offset along +x, Directed at the configured d_AB.
inline ScenarioPlacement build_scenario(const ScenarioConfig& config, double bob_offset_m) {
  return build_scenario(config, std::array<double, 2>{bob_offset_m, 0.0});
}

/// Bob position used for planning: cone edge (Cell) or the configured aligned spot (Directed).
inline ScenarioPlacement planning_placement(const ScenarioConfig& config) {
  if (config.variant == ScenarioVariant::Cell) {
    return build_scenario(config, cone_radius(config.alice, config.height_difference_m));
  }
  return build_scenario(config, config.horizontal_distance_m);
}

/// Regular axis ticks covering [lo, hi], centered so the grid is mirror-symmetric.
inline std::vector<double> grid_axis(double lo, double hi, double resolution) {
  const auto count = static_cast<std::size_t>(std::floor((hi - lo) / resolution + 1e-9)) + 1;
  const double start = lo + 0.5 * ((hi - lo) - static_cast<double>(count - 1) * resolution);
  std::vector<double> ticks(count);
  for (std::size_t i = 0; i < count; ++i) ticks[i] = start + static_cast<double>(i) * resolution;
  return ticks;
}

struct EveGrid {
  std::vector<double> xs;
  std::vector<double> ys;
  double z = 0.0;

  std::size_t nx() const { return xs.size(); }
  std::size_t ny() const { return ys.size(); }
  std::size_t size() const { return xs.size() * ys.size(); }
  /// Row-major: y outer, x inner.
  Vec3 at(std::size_t index) const { return {xs[index % nx()], ys[index / nx()], z}; }
};

inline EveGrid eve_grid(const ScenarioConfig& config, double resolution_m) {
  detail::require_positive(resolution_m, "grid resolution");
  return {grid_axis(config.room.x_min, config.room.x_max, resolution_m),
          grid_axis(config.room.y_min, config.room.y_max, resolution_m), config.receiver_height_m};
}

inline std::vector<Vec3> eve_positions(const ScenarioConfig& config, double resolution_m) {
  const EveGrid g = eve_grid(config, resolution_m);
  std::vector<Vec3> out;
  out.reserve(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) out.push_back(g.at(i));
  return out;
}

/// Alice -> receiver link; the receiver's antenna is boresight-aligned to Alice.
inline LinkState link_to(const ScenarioConfig& config, const NodePlacement& alice, const Vec3& receiver,
                         const Antenna& receiver_antenna) {
  const double offset = offset_angle(alice.boresight, alice.position, receiver);
  const double g_tx = pattern_gain(alice.antenna, offset);
  if (g_tx == 0.0) return LinkState::from_powers(0.0, noise_power(config.environment));  // underflowed roll-off
  return link_budget(config.transmit_power_w, g_tx, receiver_antenna.boresight_gain(), norm(receiver - alice.position),
                     config.environment);
}

inline LinkState bob_link(const ScenarioConfig& config, const ScenarioPlacement& placement) {
  return link_to(config, placement.alice, placement.bob.position, placement.bob.antenna);
}

inline LinkState eve_link(const ScenarioConfig& config, const NodePlacement& alice, const Vec3& eve) {
  return link_to(config, alice, eve, config.eve);
}

}  // namespace thzsec
