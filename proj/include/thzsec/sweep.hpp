#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"
#include "planner.hpp"
#include "secmap.hpp"

namespace thzsec {

enum class SweepVariable { Blocklength, PhiTarget, Rate, EveGain, AliceGain, HorizontalDistance, HeightDifference };

inline SweepVariable parse_sweep_variable(std::string_view name) {
  if (name == "n") return SweepVariable::Blocklength;
  if (name == "phi_target") return SweepVariable::PhiTarget;
  if (name == "R") return SweepVariable::Rate;
  if (name == "G_E") return SweepVariable::EveGain;
  if (name == "G_A") return SweepVariable::AliceGain;
  if (name == "d_AB") return SweepVariable::HorizontalDistance;
  if (name == "l_AB") return SweepVariable::HeightDifference;
  throw ConfigError("unknown sweep variable '" + std::string(name) + "' (expected n, phi_target, R, G_E, G_A, d_AB, l_AB)");
}

inline const char* to_string(SweepVariable v) {
  switch (v) {
    case SweepVariable::Blocklength: return "n";
    case SweepVariable::PhiTarget: return "phi_target";
    case SweepVariable::Rate: return "R";
    case SweepVariable::EveGain: return "G_E";
    case SweepVariable::AliceGain: return "G_A";
    case SweepVariable::HorizontalDistance: return "d_AB";
    case SweepVariable::HeightDifference: return "l_AB";
  }
  return "?";
}

struct SweepSpec {
  SweepVariable variable = SweepVariable::Blocklength;
  std::vector<double> values;
  double delta_0 = 1e-3;
  /// delta level above which a grid point counts as insecure (directed area metric).
  double insecure_threshold = 0.5;
  double resolution_m = 0.5;  // grid used for the directed area metric
};

/// One sweep point. Quantities that do not apply (or an infeasible plan) are NaN.
struct SweepRow {
  double value = 0.0;
  bool feasible = false;
  double r_b_m = std::numeric_limits<double>::quiet_NaN();
  double c_ab_bits = std::numeric_limits<double>::quiet_NaN();
  double l_bits = std::numeric_limits<double>::quiet_NaN();
  double achieved_phi = std::numeric_limits<double>::quiet_NaN();
  double r_delta_099_m = std::numeric_limits<double>::quiet_NaN();
  double r_delta_001_m = std::numeric_limits<double>::quiet_NaN();
  double transition_width_m = std::numeric_limits<double>::quiet_NaN();
  double r_e0_m = std::numeric_limits<double>::quiet_NaN();
  double insecure_fraction = std::numeric_limits<double>::quiet_NaN();
};

/// Applies one sweep value. Sweeping G_A keeps G_B = G_A and drops any pinned beamwidth
/// so the cell radius follows the gain.
inline void apply_sweep_value(SweepVariable v, double value, ScenarioConfig& config, CodeTargets& targets) {
  switch (v) {
    case SweepVariable::Blocklength:
      if (!(value >= 1.0) || value != std::floor(value)) throw ConfigError("blocklength sweep values must be integers >= 1");
      targets.blocklength = static_cast<std::int64_t>(value);
      break;
    case SweepVariable::PhiTarget: targets.phi_target = value; break;
    case SweepVariable::Rate: targets.rate_bits = value; break;
    case SweepVariable::EveGain: config.eve.boresight_gain_dbi = value; break;
    case SweepVariable::AliceGain:
      config.alice.boresight_gain_dbi = value;
      config.alice.beamwidth_override_deg.reset();
      config.bob.boresight_gain_dbi = value;
      break;
    case SweepVariable::HorizontalDistance: config.horizontal_distance_m = value; break;
    case SweepVariable::HeightDifference: config.height_difference_m = value; break;
  }
}

inline SweepRow sweep_point(const ScenarioConfig& config, const CodeTargets& targets, const SweepSpec& spec,
                            double value, unsigned threads) {
  SweepRow row;
  row.value = value;
  if (config.variant == ScenarioVariant::Cell) row.r_b_m = cone_radius(config.alice, config.height_difference_m);

  const PlanResult p = plan(config, targets);
  row.c_ab_bits = p.worst_case_bob_link.capacity_bits;
  row.feasible = p.feasible;
  if (!p.feasible) return row;
  row.l_bits = p.code.local_randomness_bits;
  row.achieved_phi = p.achieved_phi;

  if (config.variant == ScenarioVariant::Cell) {
    const RadialThresholdFinder finder(p, config);
    row.r_delta_099_m = finder.radius(0.99);
    row.r_delta_001_m = finder.radius(0.01);
    row.transition_width_m = row.r_delta_001_m - row.r_delta_099_m;
    row.r_e0_m = finder.radius(spec.delta_0);
  } else {
    row.insecure_fraction = insecure_fraction(evaluate_map(p, config, spec.resolution_m, threads), spec.insecure_threshold);
  }
  return row;
}

/// Re-plans and re-evaluates the scenario for every value of the swept variable.
inline std::vector<SweepRow> sweep(const CodeTargets& targets, const ScenarioConfig& config, const SweepSpec& spec,
                                   unsigned threads = 1) {
  if (spec.values.empty()) throw ConfigError("sweep needs at least one value");
  if (config.variant == ScenarioVariant::Cell && spec.variable == SweepVariable::HorizontalDistance) {
    throw ConfigError("d_AB is only meaningful for the directed scenario");
  }
  std::vector<SweepRow> rows;
  rows.reserve(spec.values.size());
  for (double v : spec.values) {
    ScenarioConfig c = config;
    CodeTargets t = targets;
    apply_sweep_value(spec.variable, v, c, t);
    rows.push_back(sweep_point(c, t, spec, v, threads));
  }
  return rows;
}

}  // namespace thzsec
