#pragma once

#include <cmath>
#include <numbers>

#include "errors.hpp"
#include "units.hpp"

namespace thzsec {

struct RadioEnvironment {
  double carrier_frequency_hz = 300e9;
  double bandwidth_hz = 1e9;
  double temperature_k = 290.0;
  double noise_figure_db = 9.0;

  void validate() const {
    detail::require_positive(carrier_frequency_hz, "carrier_frequency");
    detail::require_positive(bandwidth_hz, "bandwidth");
    detail::require_positive(temperature_k, "temperature");
    detail::require_non_negative(noise_figure_db, "noise_figure");
  }
};

/// Resolved quantities of one line-of-sight link. Powers in watts, information in nats
/// unless the member name says otherwise.
struct LinkState {
  double received_power_w = 0.0;
  double noise_power_w = 0.0;
  double snr = 0.0;
  double capacity_nats = 0.0;
  double capacity_bits = 0.0;
  double rho = 0.0;  // input-output correlation, rho^2 = snr / (1 + snr)
  double channel_coefficient_magnitude = 0.0;

  /// Builds the derived members from a received power and noise floor.
  static LinkState from_powers(double received_power_w, double noise_power_w) {
    detail::require_non_negative(received_power_w, "received_power");
    detail::require_positive(noise_power_w, "noise_power");
    LinkState s = from_snr(received_power_w / noise_power_w);
    s.received_power_w = received_power_w;
    s.noise_power_w = noise_power_w;
    return s;
  }

  static LinkState from_snr(double snr) {
    detail::require_non_negative(snr, "snr");
    LinkState s;
    s.snr = snr;
    s.capacity_nats = std::log1p(snr);
    s.capacity_bits = nats_to_bits(s.capacity_nats);
    s.rho = std::sqrt(snr / (1.0 + snr));
    return s;
  }
};

/// Friis free-space power gain (c0 / (4 pi fc d))^2.
inline double fspl_gain(double carrier_frequency_hz, double distance_m) {
  detail::require_positive(carrier_frequency_hz, "carrier frequency");
  detail::require_positive(distance_m, "distance");
  const double a = constants::speed_of_light / (4.0 * std::numbers::pi * carrier_frequency_hz * distance_m);
  return a * a;
}

/// Thermal noise power k_B T B F.
inline double noise_power(const RadioEnvironment& env) {
  env.validate();
  return constants::boltzmann * env.temperature_k * env.bandwidth_hz * db_to_ratio(env.noise_figure_db);
}

/// Line-of-sight link budget with effective (pattern-weighted) gains as linear ratios.
inline LinkState link_budget(double tx_power_w, double g_tx_effective, double g_rx_effective,
                             double distance_m, const RadioEnvironment& env) {
  detail::require_positive(tx_power_w, "transmit power");
  detail::require_positive(g_tx_effective, "transmit gain");
  detail::require_positive(g_rx_effective, "receive gain");
  const double path = fspl_gain(env.carrier_frequency_hz, distance_m);
  const double received = tx_power_w * g_tx_effective * g_rx_effective * path;
  LinkState s = LinkState::from_powers(received, noise_power(env));
  s.channel_coefficient_magnitude = std::sqrt(received / tx_power_w);
  return s;
}

}  // namespace thzsec
