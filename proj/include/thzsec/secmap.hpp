#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <thread>
#include <vector>

#include "bounds.hpp"
#include "errors.hpp"
#include "geometry.hpp"
#include "planner.hpp"

namespace thzsec {

struct SecrecyMapGrid {
  EveGrid grid;
  double resolution_m = 0.0;
  std::vector<double> values;  // row-major delta, y outer
  PlanResult plan;

  double at(std::size_t ix, std::size_t iy) const { return values[iy * grid.nx() + ix]; }
};

struct RadialProfile {
  std::vector<double> radii;
  std::vector<double> deltas;
};

/// Semantic security level reachable against an eavesdropper at `eve`.
inline double delta_at(const PlanResult& plan, const ScenarioConfig& config, const Vec3& eve) {
  const LinkState link = eve_link(config, plan.placement.alice, eve);
  return min_security(plan.code, link, plan.convention).value;
}

namespace detail {

inline void require_feasible(const PlanResult& plan) {
  if (!plan.feasible) throw InfeasiblePlan("secrecy evaluation needs a feasible plan");
}

inline unsigned resolve_threads(unsigned requested) {
  if (requested != 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs body(i) for i in [0, count) on up to `threads` workers.
template <typename Body>
void parallel_for(std::size_t count, unsigned threads, Body&& body) {
  threads = static_cast<unsigned>(std::min<std::size_t>(resolve_threads(threads), std::max<std::size_t>(count, 1)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> workers;
  workers.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    workers.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) body(i);
    });
  }
}

}  // namespace detail

/// Evaluates delta on the eavesdropper grid. Each point is independent, so the
/// output does not depend on `threads` (0 = hardware concurrency).
inline SecrecyMapGrid evaluate_map(const PlanResult& plan, const ScenarioConfig& config, double resolution_m,
                                   unsigned threads = 1) {
  detail::require_feasible(plan);
  SecrecyMapGrid out;
  out.grid = eve_grid(config, resolution_m);
  out.resolution_m = resolution_m;
  out.plan = plan;
  out.values.assign(out.grid.size(), 0.0);
  const std::size_t nx = out.grid.nx();
  detail::parallel_for(out.grid.ny(), threads, [&](std::size_t row) {
    for (std::size_t ix = 0; ix < nx; ++ix) {
      const std::size_t i = row * nx + ix;
      out.values[i] = delta_at(plan, config, out.grid.at(i));
    }
  });
  return out;
}

/// Fraction of grid points whose delta exceeds `threshold`.
inline double insecure_fraction(const SecrecyMapGrid& map, double threshold = 0.5) {
  if (map.values.empty()) return 0.0;
  const auto count = std::count_if(map.values.begin(), map.values.end(), [&](double d) { return d > threshold; });
  return static_cast<double>(count) / static_cast<double>(map.values.size());
}

namespace detail {

inline void require_cell(const ScenarioConfig& config, const char* what) {
  if (config.variant != ScenarioVariant::Cell) {
    throw Unsupported(std::string(what) + " is only defined for the radially symmetric cell scenario");
  }
}

inline Vec3 radial_position(const ScenarioConfig& config, const PlanResult& plan, double r) {
  const Vec3& a = plan.placement.alice.position;
  return {a.x + r, a.y, config.receiver_height_m};
}

}  // namespace detail

/// delta at `steps` evenly spaced horizontal radii from Alice's floor projection.
inline RadialProfile radial_profile(const PlanResult& plan, const ScenarioConfig& config, double r_min, double r_max,
                                    std::size_t steps, unsigned threads = 1) {
  detail::require_cell(config, "radial profile");
  detail::require_feasible(plan);
  if (!(r_min >= 0.0 && r_max > r_min)) throw DomainError("radial profile needs 0 <= r_min < r_max");
  if (steps < 2) throw DomainError("radial profile needs at least two steps");
  RadialProfile out;
  out.radii.resize(steps);
  out.deltas.resize(steps);
  const double step = (r_max - r_min) / static_cast<double>(steps - 1);
  for (std::size_t i = 0; i < steps; ++i) out.radii[i] = r_min + static_cast<double>(i) * step;
  out.radii.back() = r_max;
  detail::parallel_for(steps, threads, [&](std::size_t i) {
    out.deltas[i] = delta_at(plan, config, detail::radial_position(config, plan, out.radii[i]));
  });
  return out;
}

/// Largest horizontal distance from Alice's floor projection to a room corner.
inline double max_room_radius(const ScenarioConfig& config) {
  const auto& r = config.room;
  return std::max({std::hypot(r.x_min, r.y_min), std::hypot(r.x_min, r.y_max), std::hypot(r.x_max, r.y_min),
                   std::hypot(r.x_max, r.y_max)});
}

/// Crossing radii of a monotone radial delta profile, refined by bisection.
class RadialThresholdFinder {
 public:
  static constexpr double kCoarseStep = 0.5;         // m
  static constexpr double kRadiusTolerance = 1e-3;   // m
  static constexpr double kMonotoneSlack = 1e-12;

  RadialThresholdFinder(const PlanResult& plan, const ScenarioConfig& config, double r_max = 0.0)
      : plan_(plan), config_(config) {
    detail::require_cell(config, "threshold radius");
    detail::require_feasible(plan);
    if (r_max <= 0.0) r_max = max_room_radius(config);
    const auto n = static_cast<std::size_t>(std::ceil(r_max / kCoarseStep)) + 1;
    scan_ = radial_profile(plan, config, 0.0, r_max, std::max<std::size_t>(n, 2));
    for (std::size_t i = 1; i < scan_.deltas.size(); ++i) {
      if (scan_.deltas[i] > scan_.deltas[i - 1] + kMonotoneSlack) {
        throw DiagnosticError("radial delta profile is not monotone near r = " + std::to_string(scan_.radii[i]) + " m");
      }
    }
  }

  /// Radius where delta falls below `delta_0`; 0 when delta < delta_0 everywhere.
  double radius(double delta_0) const {
    if (!(delta_0 > 0.0 && delta_0 < 1.0)) throw DomainError("threshold level must lie in (0, 1)");
    const auto& d = scan_.deltas;
    if (d.front() < delta_0) return 0.0;
    std::size_t i = 1;
    while (i < d.size() && d[i] >= delta_0) ++i;
    if (i == d.size()) {
      throw DiagnosticError("delta stays above " + std::to_string(delta_0) + " out to r = " +
                            std::to_string(scan_.radii.back()) + " m");
    }
    double lo = scan_.radii[i - 1];  // delta >= delta_0
    double hi = scan_.radii[i];      // delta < delta_0
    while (hi - lo > kRadiusTolerance) {
      const double mid = 0.5 * (lo + hi);
      (delta_at(plan_, config_, detail::radial_position(config_, plan_, mid)) >= delta_0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  }

  const RadialProfile& coarse_profile() const { return scan_; }

 private:
  PlanResult plan_;
  ScenarioConfig config_;
  RadialProfile scan_;
};

/// Threshold radius r_E0 with delta(r_E0) = delta_0.
inline double threshold_radius(const PlanResult& plan, const ScenarioConfig& config, double delta_0,
                               double r_max = 0.0) {
  return RadialThresholdFinder(plan, config, r_max).radius(delta_0);
}

}  // namespace thzsec
