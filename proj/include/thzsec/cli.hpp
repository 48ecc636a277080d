#pragma once

// Command-line front end: subcommand dispatch, config overrides, file output.
//
// Exit codes: 0 success, 1 I/O failure, 2 configuration/validation error,
// 3 infeasible plan.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "config.hpp"
#include "io.hpp"
#include "planner.hpp"
#include "secmap.hpp"
#include "sweep.hpp"

#ifndef THZSEC_VERSION
#define THZSEC_VERSION "0.1.0"
#endif

namespace thzsec::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitIo = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitInfeasible = 3;

class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

using config::Json;
using io::format_number;

inline const char* to_string(DivergenceConvention c) { return c == DivergenceConvention::Complex ? "complex" : "real"; }

inline Json link_json(const LinkState& s) {
  return {{"received_power_dbm", s.received_power_w > 0.0 ? Json(watts_to_dbm(s.received_power_w)) : Json(nullptr)},
          {"noise_power_dbm", watts_to_dbm(s.noise_power_w)},
          {"snr", s.snr},
          {"capacity_bits", s.capacity_bits},
          {"rho", s.rho}};
}

inline Json plan_json(const PlanResult& p) {
  Json j;
  j["feasible"] = p.feasible;
  j["transmit_power_w"] = p.transmit_power_w;
  j["bob_position_m"] = {p.placement.bob.position.x, p.placement.bob.position.y, p.placement.bob.position.z};
  j["bob_link"] = link_json(p.worst_case_bob_link);
  j["local_randomness_bits"] = p.feasible ? Json(p.code.local_randomness_bits) : Json(nullptr);
  j["local_randomness_interval_bits"] =
      p.feasible ? Json::array({0.0, p.max_local_randomness_bits}) : Json(nullptr);
  j["achieved_phi"] = p.feasible ? Json(p.achieved_phi) : Json(nullptr);
  if (p.reliability_argmin) {
    j["reliability_alpha"] = p.reliability_argmin->alpha;
    j["reliability_lambda_nats"] = p.reliability_argmin->lambda_nats;
  }
  j["divergence"] = to_string(p.convention);
  return j;
}

struct Session {
  config::RunConfig cfg;
  std::string command;
  unsigned threads = 0;
  std::ostream& out;

  std::filesystem::path dir() const { return cfg.output_dir; }

  void ensure_dir() const {
    std::error_code ec;
    std::filesystem::create_directories(dir(), ec);
    if (ec) throw IoError("cannot create output directory '" + cfg.output_dir + "': " + ec.message());
  }

  /// Writes `content` to `name` inside the output directory.
  void write(const std::string& name, const std::string& content) const {
    ensure_dir();
    const auto path = dir() / name;
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open '" + path.string() + "' for writing");
    f << content;
    f.close();
    if (!f) throw IoError("failed writing '" + path.string() + "'");
  }

  /// Run metadata: the full resolved configuration plus a `run_info` block, which
  /// the loader ignores, so the file can be fed back as `--config`.
  void write_metadata(Json run_info) const {
    Json meta = config::to_json(cfg);
    Json info;
    info["tool"] = "thzsec";
    info["version"] = THZSEC_VERSION;
    info["command"] = command;
    for (auto& [k, v] : run_info.items()) info[k] = v;
    meta["run_info"] = info;
    write(command + ".meta.json", meta.dump(2) + "\n");
  }
};

inline int cmd_plan(Session& s) {
  const PlanResult p = plan(s.cfg.to_scenario(), s.cfg.to_targets());
  s.write_metadata({{"plan", plan_json(p)}});
  s.out << "variant: " << s.cfg.variant << '\n'
        << "c_ab_bits: " << format_number(p.worst_case_bob_link.capacity_bits) << '\n'
        << "feasible: " << (p.feasible ? "yes" : "no") << '\n';
  if (!p.feasible) return kExitInfeasible;
  s.out << "l_bits: " << format_number(p.code.local_randomness_bits) << '\n'
        << "l_interval_bits: [0, " << format_number(p.max_local_randomness_bits) << "]\n"
        << "achieved_phi: " << format_number(p.achieved_phi) << '\n';
  return kExitOk;
}

inline PlanResult feasible_plan(const Session& s, const ScenarioConfig& scenario) {
  const PlanResult p = plan(scenario, s.cfg.to_targets());
  if (!p.feasible) throw InfeasiblePlan("no local randomness rate meets phi_target = " + format_number(s.cfg.phi_target));
  return p;
}

inline int cmd_map(Session& s) {
  const ScenarioConfig scenario = s.cfg.to_scenario();
  const PlanResult p = feasible_plan(s, scenario);
  const SecrecyMapGrid m = evaluate_map(p, scenario, s.cfg.resolution_m, s.threads);
  std::ostringstream csv, pgm;
  io::write_map_csv(csv, m);
  io::write_map_pgm(pgm, m);
  s.write("map.csv", csv.str());
  s.write("map.pgm", pgm.str());
  const double frac = insecure_fraction(m, s.cfg.insecure_threshold);
  s.write_metadata({{"plan", plan_json(p)},
                    {"grid", {{"nx", m.grid.nx()}, {"ny", m.grid.ny()}}},
                    {"insecure_fraction", frac},
                    {"outputs", {"map.csv", "map.pgm"}}});
  s.out << "grid: " << m.grid.nx() << " x " << m.grid.ny() << '\n'
        << "l_bits: " << format_number(p.code.local_randomness_bits) << '\n'
        << "insecure_fraction: " << format_number(frac) << '\n';
  return kExitOk;
}

inline int cmd_radial(Session& s) {
  const ScenarioConfig scenario = s.cfg.to_scenario();
  const PlanResult p = feasible_plan(s, scenario);
  const double r_max = s.cfg.radial.r_max_m.value_or(max_room_radius(scenario));
  const RadialProfile prof = radial_profile(p, scenario, s.cfg.radial.r_min_m, r_max,
                                            static_cast<std::size_t>(s.cfg.radial.steps), s.threads);
  std::ostringstream csv;
  io::write_radial_csv(csv, prof);
  s.write("radial.csv", csv.str());
  s.write_metadata({{"plan", plan_json(p)}, {"outputs", {"radial.csv"}}});
  s.out << "points: " << prof.radii.size() << '\n';
  return kExitOk;
}

inline int cmd_threshold(Session& s) {
  const ScenarioConfig scenario = s.cfg.to_scenario();
  const PlanResult p = feasible_plan(s, scenario);
  const double r = threshold_radius(p, scenario, s.cfg.threshold_delta);
  s.write_metadata({{"plan", plan_json(p)}, {"delta", s.cfg.threshold_delta}, {"r_e0_m", r}});
  s.out << "r_e0_m: " << format_number(r) << '\n';
  return kExitOk;
}

inline int cmd_sweep(Session& s) {
  const SweepSpec spec = s.cfg.to_sweep_spec();
  const auto rows = sweep(s.cfg.to_targets(), s.cfg.to_scenario(), spec, s.threads);
  std::ostringstream csv;
  io::write_sweep_csv(csv, spec.variable, rows);
  s.write("sweep.csv", csv.str());
  s.write_metadata({{"outputs", {"sweep.csv"}}});
  s.out << csv.str();
  return kExitOk;
}

inline int cmd_link(Session& s, const std::vector<double>& eve_xy) {
  const ScenarioConfig scenario = s.cfg.to_scenario();
  const ScenarioPlacement placement = planning_placement(scenario);
  const LinkState bob = bob_link(scenario, placement);
  Json info;
  info["beamwidth_deg"] = beamwidth_from_gain(scenario.alice);
  if (scenario.variant == ScenarioVariant::Cell) info["cell_radius_m"] = cone_radius(scenario.alice, scenario.height_difference_m);
  info["bob_distance_m"] = norm(placement.bob.position - placement.alice.position);
  info["bob_link"] = link_json(bob);
  s.out << "beamwidth_deg: " << format_number(info["beamwidth_deg"].get<double>()) << '\n';
  if (info.contains("cell_radius_m")) s.out << "cell_radius_m: " << format_number(info["cell_radius_m"].get<double>()) << '\n';
  s.out << "bob_distance_m: " << format_number(info["bob_distance_m"].get<double>()) << '\n'
        << "bob_snr_db: " << format_number(ratio_to_db(bob.snr)) << '\n'
        << "bob_capacity_bits: " << format_number(bob.capacity_bits) << '\n';
  if (!eve_xy.empty()) {
    if (eve_xy.size() != 2) throw ConfigError("--eve expects X,Y");
    const Vec3 eve{eve_xy[0], eve_xy[1], scenario.receiver_height_m};
    const LinkState e = eve_link(scenario, placement.alice, eve);
    info["eve_link"] = link_json(e);
    s.out << "eve_snr_db: " << format_number(e.snr > 0.0 ? ratio_to_db(e.snr) : -INFINITY) << '\n'
          << "eve_capacity_bits: " << format_number(e.capacity_bits) << '\n';
    const PlanResult p = plan(scenario, s.cfg.to_targets());
    if (p.feasible) {
      const double d = min_security(p.code, e, p.convention).value;
      info["eve_delta"] = d;
      s.out << "eve_delta: " << format_number(d) << '\n';
    }
  }
  s.write_metadata(info);
  return kExitOk;
}

}  // namespace detail

/// Runs the tool on an argument list (argv[0] excluded).
inline int run(const std::vector<std::string>& args, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Semantic-security planning for line-of-sight THz wiretap links", "thzsec"};
  app.require_subcommand(1);
  app.set_version_flag("--version", THZSEC_VERSION);

  struct Common {
    std::string config_path;
    std::string out_dir;
    double resolution = 0.0;
    unsigned threads = 0;
    bool seedless = false;
  };
  Common common;
  double delta = 0.0;
  double r_min = -1.0, r_max = 0.0;
  std::int64_t steps = 0;
  std::string variable;
  std::vector<double> values;
  std::vector<double> eve_xy;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", common.config_path, "JSON run configuration")->required();
    sub->add_option("--out", common.out_dir, "Output directory (overrides output.dir)");
    sub->add_option("--resolution", common.resolution, "Grid resolution in meters (overrides output.resolution_m)")
        ->check(CLI::PositiveNumber);
    sub->add_option("--threads", common.threads, "Worker threads, 0 = all cores");
    sub->add_flag("--seedless", common.seedless, "Accepted for scripts; every run is deterministic");
  };

  auto* plan_cmd = app.add_subcommand("plan", "Resolve the local randomness rate for the reliability target");
  auto* map_cmd = app.add_subcommand("map", "Evaluate the secrecy map on the eavesdropper grid");
  auto* radial_cmd = app.add_subcommand("radial", "Radial delta profile (cell scenario)");
  auto* threshold_cmd = app.add_subcommand("threshold", "Threshold radius where delta falls to a level (cell)");
  auto* sweep_cmd = app.add_subcommand("sweep", "Re-plan and evaluate over one swept parameter");
  auto* link_cmd = app.add_subcommand("link", "Single-link diagnostic");
  for (auto* sub : {plan_cmd, map_cmd, radial_cmd, threshold_cmd, sweep_cmd, link_cmd}) add_common(sub);
  threshold_cmd->add_option("--delta", delta, "Target level (overrides analysis.threshold.delta)");
  radial_cmd->add_option("--r-min", r_min, "Smallest radius, m");
  radial_cmd->add_option("--r-max", r_max, "Largest radius, m");
  radial_cmd->add_option("--steps", steps, "Number of radii");
  sweep_cmd->add_option("--variable", variable, "n, phi_target, R, G_E, G_A, d_AB or l_AB");
  sweep_cmd->add_option("--values", values, "Values of the swept variable")->delimiter(',');
  link_cmd->add_option("--eve", eve_xy, "Eavesdropper floor position X,Y in meters")->delimiter(',');

  std::vector<std::string> argv_store{"thzsec"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::Success& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitConfig;
  }

  CLI::App* sub = app.get_subcommands().front();
  try {
    detail::Session s{config::load(common.config_path), sub->get_name(), common.threads, out};
    if (!common.out_dir.empty()) s.cfg.output_dir = common.out_dir;
    if (common.resolution > 0.0) s.cfg.resolution_m = common.resolution;
    if (sub == threshold_cmd && sub->count("--delta")) {
      if (!(delta > 0.0 && delta < 1.0)) throw ConfigError("--delta must lie in (0, 1)");
      s.cfg.threshold_delta = delta;
    }
    if (sub == radial_cmd) {
      if (sub->count("--r-min")) s.cfg.radial.r_min_m = r_min;
      if (sub->count("--r-max")) s.cfg.radial.r_max_m = r_max;
      if (sub->count("--steps")) s.cfg.radial.steps = steps;
    }
    if (sub == sweep_cmd) {
      if (sub->count("--variable")) s.cfg.sweep.variable = variable;
      if (sub->count("--values")) s.cfg.sweep.values = values;
    }
    // Re-validate after command-line overrides.
    s.cfg = config::from_json(config::to_json(s.cfg));

    if (sub == plan_cmd) return detail::cmd_plan(s);
    if (sub == map_cmd) return detail::cmd_map(s);
    if (sub == radial_cmd) return detail::cmd_radial(s);
    if (sub == threshold_cmd) return detail::cmd_threshold(s);
    if (sub == sweep_cmd) return detail::cmd_sweep(s);
    return detail::cmd_link(s, eve_xy);
  } catch (const InfeasiblePlan& e) {
    err << "infeasible: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << '\n';
    return kExitIo;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::logic_error& e) {  // DomainError, Unsupported
    err << "invalid input: " << e.what() << '\n';
    return kExitConfig;
  } catch (const DiagnosticError& e) {
    err << "diagnostic: " << e.what() << '\n';
    return kExitConfig;
  }
}

inline int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args);
}

}  // namespace thzsec::cli
