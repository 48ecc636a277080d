#pragma once

// JSON run configuration. Values are kept in the units users write (GHz, dBi, mW,
// bits) so an emitted configuration reloads to exactly the same numbers.

#include <cstdint>
#include <fstream>
#include <initializer_list>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "errors.hpp"
#include "geometry.hpp"
#include "planner.hpp"
#include "sweep.hpp"
#include "units.hpp"

namespace thzsec::config {

using Json = nlohmann::ordered_json;

struct AntennaDoc {
  double gain_dbi = 0.0;
  double kappa_deg2 = 41253.0;
  std::optional<double> min_relative_gain_db;
  std::optional<double> beamwidth_deg;
};

struct RadialDoc {
  double r_min_m = 0.0;
  std::optional<double> r_max_m;  // default: farthest room corner
  std::int64_t steps = 241;
};

struct SweepDoc {
  std::string variable = "n";
  std::vector<double> values;
};

struct RunConfig {
  // environment
  double carrier_frequency_ghz = 300.0;
  double bandwidth_ghz = 1.0;
  double temperature_k = 290.0;
  double noise_figure_db = 9.0;
  // antennas
  AntennaDoc alice;
  AntennaDoc bob;
  AntennaDoc eve;
  // scenario
  std::string variant = "cell";
  RoomExtent room;
  double height_difference_m = 3.5;
  std::optional<double> horizontal_distance_m;
  double receiver_height_m = 1.0;
  double transmitter_setback_m = 0.5;
  // code
  std::int64_t n = 2000;
  double rate_bits = 0.2;
  double phi_target = 1e-3;
  std::string divergence = "complex";
  // power
  double transmit_power_mw = 9.0;
  // output
  std::string output_dir = "out";
  double resolution_m = 0.25;
  double insecure_threshold = 0.5;
  // analysis
  RadialDoc radial;
  double threshold_delta = 1e-3;
  SweepDoc sweep;

  ScenarioConfig to_scenario() const;
  CodeTargets to_targets() const;
  SweepSpec to_sweep_spec() const;
};

namespace detail {

class Reader {
 public:
  Reader(const Json& node, std::string path) : node_(node), path_(std::move(path)) {
    if (!node_.is_object()) throw ConfigError(where() + " must be an object");
  }

  void allow_only(std::initializer_list<const char*> keys) const {
    for (const auto& [key, _] : node_.items()) {
      bool known = false;
      for (const char* k : keys) known = known || key == k;
      if (!known) throw ConfigError("unknown key '" + child(key) + "'");
    }
  }

  bool has(const char* key) const { return node_.contains(key) && !node_.at(key).is_null(); }

  Reader object(const char* key) const {
    if (!node_.contains(key)) throw ConfigError("missing key '" + child(key) + "'");
    return Reader(node_.at(key), child(key));
  }

  double number(const char* key) const {
    if (!has(key)) throw ConfigError("missing key '" + child(key) + "'");
    const Json& v = node_.at(key);
    if (!v.is_number()) throw ConfigError("key '" + child(key) + "' must be a number");
    return v.get<double>();
  }
  void number(const char* key, double& out) const {
    if (has(key)) out = number(key);
  }
  void number(const char* key, std::optional<double>& out) const {
    if (has(key)) out = number(key);
  }

  std::int64_t integer(const char* key) const {
    if (!has(key)) throw ConfigError("missing key '" + child(key) + "'");
    const Json& v = node_.at(key);
    if (!v.is_number_integer()) throw ConfigError("key '" + child(key) + "' must be an integer");
    return v.get<std::int64_t>();
  }
  void integer(const char* key, std::int64_t& out) const {
    if (has(key)) out = integer(key);
  }

  void string(const char* key, std::string& out) const {
    if (!has(key)) return;
    const Json& v = node_.at(key);
    if (!v.is_string()) throw ConfigError("key '" + child(key) + "' must be a string");
    out = v.get<std::string>();
  }

  void numbers(const char* key, std::vector<double>& out) const {
    if (!has(key)) return;
    const Json& v = node_.at(key);
    if (!v.is_array()) throw ConfigError("key '" + child(key) + "' must be an array of numbers");
    out.clear();
    for (const Json& e : v) {
      if (!e.is_number()) throw ConfigError("key '" + child(key) + "' must be an array of numbers");
      out.push_back(e.get<double>());
    }
  }

  std::string child(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }
  std::string where() const { return path_.empty() ? "configuration" : "'" + path_ + "'"; }

 private:
  const Json& node_;
  std::string path_;
};

inline void check(bool ok, const std::string& what) {
  if (!ok) throw ConfigError(what);
}

inline AntennaDoc read_antenna(const Reader& r) {
  r.allow_only({"gain_dbi", "kappa_deg2", "min_relative_gain_db", "beamwidth_deg"});
  AntennaDoc a;
  a.gain_dbi = r.number("gain_dbi");
  r.number("kappa_deg2", a.kappa_deg2);
  r.number("min_relative_gain_db", a.min_relative_gain_db);
  r.number("beamwidth_deg", a.beamwidth_deg);
  check(a.gain_dbi >= 0.0, r.child("gain_dbi") + " must be >= 0 dBi");
  check(a.kappa_deg2 > 0.0, r.child("kappa_deg2") + " must be positive");
  check(!a.min_relative_gain_db || *a.min_relative_gain_db <= 0.0, r.child("min_relative_gain_db") + " must be <= 0 dB");
  check(!a.beamwidth_deg || (*a.beamwidth_deg > 0.0 && *a.beamwidth_deg <= 180.0),
        r.child("beamwidth_deg") + " must lie in (0, 180]");
  return a;
}

inline Json write_antenna(const AntennaDoc& a) {
  Json j;
  j["gain_dbi"] = a.gain_dbi;
  j["kappa_deg2"] = a.kappa_deg2;
  j["min_relative_gain_db"] = a.min_relative_gain_db ? Json(*a.min_relative_gain_db) : Json(nullptr);
  j["beamwidth_deg"] = a.beamwidth_deg ? Json(*a.beamwidth_deg) : Json(nullptr);
  return j;
}

inline Antenna to_antenna(const AntennaDoc& a) {
  Antenna out;
  out.boresight_gain_dbi = a.gain_dbi;
  out.kappa_deg2 = a.kappa_deg2;
  if (a.min_relative_gain_db) out.min_relative_gain_db = *a.min_relative_gain_db;
  out.beamwidth_override_deg = a.beamwidth_deg;
  return out;
}

}  // namespace detail

/// Validates and converts a parsed JSON document. Throws ConfigError naming the offending key.
inline RunConfig from_json(const Json& doc) {
  using detail::check;
  const detail::Reader root(doc, "");
  root.allow_only({"environment", "antennas", "scenario", "code", "power", "output", "analysis", "run_info"});
  RunConfig c;

  if (root.has("environment")) {
    const auto env = root.object("environment");
    env.allow_only({"carrier_frequency_ghz", "bandwidth_ghz", "temperature_k", "noise_figure_db"});
    env.number("carrier_frequency_ghz", c.carrier_frequency_ghz);
    env.number("bandwidth_ghz", c.bandwidth_ghz);
    env.number("temperature_k", c.temperature_k);
    env.number("noise_figure_db", c.noise_figure_db);
    check(c.carrier_frequency_ghz > 0.0, "environment.carrier_frequency_ghz must be positive");
    check(c.bandwidth_ghz > 0.0, "environment.bandwidth_ghz must be positive");
    check(c.temperature_k > 0.0, "environment.temperature_k must be positive");
    check(c.noise_figure_db >= 0.0, "environment.noise_figure_db must be >= 0 dB");
  }

  const auto antennas = root.object("antennas");
  antennas.allow_only({"alice", "bob", "eve"});
  c.alice = detail::read_antenna(antennas.object("alice"));
  c.bob = detail::read_antenna(antennas.object("bob"));
  c.eve = detail::read_antenna(antennas.object("eve"));

  const auto sc = root.object("scenario");
  sc.allow_only({"variant", "room_m", "height_difference_m", "horizontal_distance_m", "receiver_height_m",
                 "transmitter_setback_m"});
  check(sc.has("variant"), "missing key 'scenario.variant'");
  sc.string("variant", c.variant);
  check(c.variant == "cell" || c.variant == "directed", "scenario.variant must be \"cell\" or \"directed\"");
  if (c.variant == "directed") c.room = {0.0, 40.0, -20.0, 20.0};
  if (sc.has("room_m")) {
    const auto room = sc.object("room_m");
    room.allow_only({"x_min", "x_max", "y_min", "y_max"});
    c.room = {room.number("x_min"), room.number("x_max"), room.number("y_min"), room.number("y_max")};
    check(c.room.x_max > c.room.x_min && c.room.y_max > c.room.y_min, "scenario.room_m is empty");
  }
  c.height_difference_m = sc.number("height_difference_m");
  check(c.height_difference_m > 0.0, "scenario.height_difference_m must be positive");
  sc.number("horizontal_distance_m", c.horizontal_distance_m);
  if (c.variant == "directed") {
    check(c.horizontal_distance_m.has_value(), "missing key 'scenario.horizontal_distance_m'");
    check(*c.horizontal_distance_m > 0.0, "scenario.horizontal_distance_m must be positive");
  }
  sc.number("receiver_height_m", c.receiver_height_m);
  sc.number("transmitter_setback_m", c.transmitter_setback_m);
  check(c.receiver_height_m >= 0.0, "scenario.receiver_height_m must be >= 0");
  check(c.transmitter_setback_m >= 0.0, "scenario.transmitter_setback_m must be >= 0");

  const auto code = root.object("code");
  code.allow_only({"n", "rate_bits", "phi_target", "divergence"});
  c.n = code.integer("n");
  c.rate_bits = code.number("rate_bits");
  c.phi_target = code.number("phi_target");
  code.string("divergence", c.divergence);
  check(c.n >= 1, "code.n must be >= 1");
  check(c.rate_bits > 0.0, "code.rate_bits must be positive");
  check(c.phi_target > 0.0 && c.phi_target < 1.0, "code.phi_target must lie in (0, 1)");
  check(c.divergence == "complex" || c.divergence == "real", "code.divergence must be \"complex\" or \"real\"");

  const auto power = root.object("power");
  power.allow_only({"transmit_power_mw"});
  c.transmit_power_mw = power.number("transmit_power_mw");
  check(c.transmit_power_mw > 0.0, "power.transmit_power_mw must be positive");

  if (root.has("output")) {
    const auto out = root.object("output");
    out.allow_only({"dir", "resolution_m", "insecure_threshold"});
    out.string("dir", c.output_dir);
    out.number("resolution_m", c.resolution_m);
    out.number("insecure_threshold", c.insecure_threshold);
    check(!c.output_dir.empty(), "output.dir must not be empty");
    check(c.resolution_m > 0.0, "output.resolution_m must be positive");
    check(c.insecure_threshold > 0.0 && c.insecure_threshold < 1.0, "output.insecure_threshold must lie in (0, 1)");
  }

  if (root.has("analysis")) {
    const auto an = root.object("analysis");
    an.allow_only({"radial", "threshold", "sweep"});
    if (an.has("radial")) {
      const auto r = an.object("radial");
      r.allow_only({"r_min_m", "r_max_m", "steps"});
      r.number("r_min_m", c.radial.r_min_m);
      r.number("r_max_m", c.radial.r_max_m);
      r.integer("steps", c.radial.steps);
      check(c.radial.r_min_m >= 0.0, "analysis.radial.r_min_m must be >= 0");
      check(!c.radial.r_max_m || *c.radial.r_max_m > c.radial.r_min_m, "analysis.radial.r_max_m must exceed r_min_m");
      check(c.radial.steps >= 2, "analysis.radial.steps must be >= 2");
    }
    if (an.has("threshold")) {
      const auto t = an.object("threshold");
      t.allow_only({"delta"});
      t.number("delta", c.threshold_delta);
      check(c.threshold_delta > 0.0 && c.threshold_delta < 1.0, "analysis.threshold.delta must lie in (0, 1)");
    }
    if (an.has("sweep")) {
      const auto s = an.object("sweep");
      s.allow_only({"variable", "values"});
      s.string("variable", c.sweep.variable);
      s.numbers("values", c.sweep.values);
      parse_sweep_variable(c.sweep.variable);
    }
  }
  return c;
}

inline Json to_json(const RunConfig& c) {
  Json j;
  j["environment"] = {{"carrier_frequency_ghz", c.carrier_frequency_ghz},
                      {"bandwidth_ghz", c.bandwidth_ghz},
                      {"temperature_k", c.temperature_k},
                      {"noise_figure_db", c.noise_figure_db}};
  j["antennas"] = {{"alice", detail::write_antenna(c.alice)},
                   {"bob", detail::write_antenna(c.bob)},
                   {"eve", detail::write_antenna(c.eve)}};
  Json sc;
  sc["variant"] = c.variant;
  sc["room_m"] = {{"x_min", c.room.x_min}, {"x_max", c.room.x_max}, {"y_min", c.room.y_min}, {"y_max", c.room.y_max}};
  sc["height_difference_m"] = c.height_difference_m;
  sc["horizontal_distance_m"] = c.horizontal_distance_m ? Json(*c.horizontal_distance_m) : Json(nullptr);
  sc["receiver_height_m"] = c.receiver_height_m;
  sc["transmitter_setback_m"] = c.transmitter_setback_m;
  j["scenario"] = sc;
  j["code"] = {{"n", c.n}, {"rate_bits", c.rate_bits}, {"phi_target", c.phi_target}, {"divergence", c.divergence}};
  j["power"] = {{"transmit_power_mw", c.transmit_power_mw}};
  j["output"] = {{"dir", c.output_dir}, {"resolution_m", c.resolution_m}, {"insecure_threshold", c.insecure_threshold}};
  Json radial = {{"r_min_m", c.radial.r_min_m},
                 {"r_max_m", c.radial.r_max_m ? Json(*c.radial.r_max_m) : Json(nullptr)},
                 {"steps", c.radial.steps}};
  j["analysis"] = {{"radial", radial},
                   {"threshold", {{"delta", c.threshold_delta}}},
                   {"sweep", {{"variable", c.sweep.variable}, {"values", c.sweep.values}}}};
  return j;
}

/// Parses JSON text; syntax errors carry the parser's line/column diagnostic.
inline RunConfig parse(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ConfigError(std::string("malformed JSON: ") + e.what());
  }
  return from_json(doc);
}

inline RunConfig load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open configuration file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

inline ScenarioConfig RunConfig::to_scenario() const {
  ScenarioConfig s;
  s.variant = variant == "cell" ? ScenarioVariant::Cell : ScenarioVariant::Directed;
  s.room = room;
  s.height_difference_m = height_difference_m;
  if (horizontal_distance_m) s.horizontal_distance_m = *horizontal_distance_m;
  s.receiver_height_m = receiver_height_m;
  s.transmitter_setback_m = transmitter_setback_m;
  s.alice = detail::to_antenna(alice);
  s.bob = detail::to_antenna(bob);
  s.eve = detail::to_antenna(eve);
  s.transmit_power_w = transmit_power_mw * 1e-3;
  s.environment = {carrier_frequency_ghz * 1e9, bandwidth_ghz * 1e9, temperature_k, noise_figure_db};
  return s;
}

inline CodeTargets RunConfig::to_targets() const {
  return {n, rate_bits, phi_target, divergence == "real" ? DivergenceConvention::Real : DivergenceConvention::Complex};
}

inline SweepSpec RunConfig::to_sweep_spec() const {
  SweepSpec s;
  s.variable = parse_sweep_variable(sweep.variable);
  s.values = sweep.values;
  s.delta_0 = threshold_delta;
  s.insecure_threshold = insecure_threshold;
  s.resolution_m = resolution_m;
  return s;
}

}  // namespace thzsec::config
