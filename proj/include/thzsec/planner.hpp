#pragma once

#include <cmath>
#include <cstdint>
#include <optional>

#include "bounds.hpp"
#include "errors.hpp"
#include "geometry.hpp"

namespace thzsec {

/// Fixed code targets; the local randomness rate is what the planner resolves.
struct CodeTargets {
  std::int64_t blocklength = 2000;
  double rate_bits = 0.2;
  double phi_target = 1e-3;
  DivergenceConvention convention = DivergenceConvention::Complex;

  void validate() const {
    if (blocklength < 1) throw DomainError("blocklength must be >= 1");
    detail::require_positive(rate_bits, "secrecy rate");
    if (!(phi_target > 0.0 && phi_target < 1.0)) throw DomainError("reliability target must lie in (0, 1)");
  }
};

struct PlanResult {
  ScenarioVariant variant = ScenarioVariant::Cell;
  SecrecyCode code;
  DivergenceConvention convention = DivergenceConvention::Complex;
  double phi_target = 0.0;
  double transmit_power_w = 0.0;
  ScenarioPlacement placement;  // Bob at the planning position
  LinkState worst_case_bob_link;
  double achieved_phi = 1.0;
  std::optional<BoundFreeParams> reliability_argmin;
  bool feasible = false;
  /// Largest L whose reliability bound still meets the target; the feasible
  /// interval of L is [0, max_local_randomness_bits].
  double max_local_randomness_bits = 0.0;
};

inline constexpr double kPlanTolerance = 1e-6;  // bits

/// Resolves the largest L in [0, C_AB - R) that keeps the reliability bound at or
/// below the target for the given Bob link.
inline PlanResult plan_for_link(const LinkState& bob, const CodeTargets& targets) {
  targets.validate();
  PlanResult out;
  out.worst_case_bob_link = bob;
  out.phi_target = targets.phi_target;
  out.convention = targets.convention;
  out.code = {targets.blocklength, targets.rate_bits, 0.0};

  const double log_target = std::log(targets.phi_target);
  auto meets = [&](double l_bits) {
    const SecrecyCode code{targets.blocklength, targets.rate_bits, l_bits};
    return min_reliability(code, bob, targets.convention).log_value <= log_target;
  };

  const double budget = bob.capacity_bits - targets.rate_bits;
  if (!(budget > 0.0) || !meets(0.0)) return out;

  double lo = 0.0;
  double hi = budget;  // infeasible: the rate margin closes at C_AB - R
  while (hi - lo > kPlanTolerance) {
    const double mid = 0.5 * (lo + hi);
    (meets(mid) ? lo : hi) = mid;
  }
  out.code.local_randomness_bits = lo;
  out.max_local_randomness_bits = lo;
  const BoundResult phi = min_reliability(out.code, bob, targets.convention);
  out.achieved_phi = phi.value;
  out.reliability_argmin = phi.argmin;
  out.feasible = true;
  return out;
}

/// Cell plan: Bob on the 3 dB cone edge, the farthest and weakest in-cell position.
inline PlanResult plan_cell(ScenarioConfig config, const CodeTargets& targets, double transmit_power_w) {
  if (config.variant != ScenarioVariant::Cell) throw Unsupported("plan_cell needs a cell scenario");
  detail::require_positive(transmit_power_w, "transmit power");
  config.transmit_power_w = transmit_power_w;
  const ScenarioPlacement placement = planning_placement(config);
  PlanResult out = plan_for_link(bob_link(config, placement), targets);
  out.variant = ScenarioVariant::Cell;
  out.transmit_power_w = transmit_power_w;
  out.placement = placement;
  return out;
}

/// Directed plan: Alice aimed at Bob `horizontal_distance_m` into the room.
inline PlanResult plan_directed(ScenarioConfig config, double horizontal_distance_m, const CodeTargets& targets,
                                double transmit_power_w) {
  if (config.variant != ScenarioVariant::Directed) throw Unsupported("plan_directed needs a directed scenario");
  detail::require_positive(transmit_power_w, "transmit power");
  config.transmit_power_w = transmit_power_w;
  config.horizontal_distance_m = horizontal_distance_m;
  const ScenarioPlacement placement = planning_placement(config);
  PlanResult out = plan_for_link(bob_link(config, placement), targets);
  out.variant = ScenarioVariant::Directed;
  out.transmit_power_w = transmit_power_w;
  out.placement = placement;
  return out;
}

/// Dispatches on the scenario variant using the configured power and distance.
inline PlanResult plan(const ScenarioConfig& config, const CodeTargets& targets) {
  if (config.variant == ScenarioVariant::Cell) return plan_cell(config, targets, config.transmit_power_w);
  return plan_directed(config, config.horizontal_distance_m, targets, config.transmit_power_w);
}

}  // namespace thzsec
