#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>

#include "errors.hpp"
#include "golden_section.hpp"
#include "linkmodel.hpp"
#include "units.hpp"

namespace thzsec {

/// Wiretap code parameters. Rates in bit per channel use.
struct SecrecyCode {
  std::int64_t blocklength = 2000;
  double rate_bits = 0.2;
  double local_randomness_bits = 0.0;

  double rate_nats() const { return bits_to_nats(rate_bits); }
  double local_randomness_nats() const { return bits_to_nats(local_randomness_bits); }

  void validate() const {
    if (blocklength < 1) throw DomainError("blocklength must be >= 1");
    detail::require_positive(rate_bits, "secrecy rate");
    detail::require_non_negative(local_randomness_bits, "local randomness rate");
  }
};

/// Free parameters of the reliability/security bounds. The higher-order terms
/// epsilon are fixed at zero.
struct BoundFreeParams {
  double alpha = 0.5;
  double lambda_nats = 0.0;
  double epsilon = 0.0;
};

/// How the real bivariate-Gaussian divergence maps onto a complex channel use.
/// `Complex` doubles it so the alpha -> 1 limit is ln(1 + SNR); `Real` uses it as is.
enum class DivergenceConvention { Complex, Real };

inline double divergence_factor(DivergenceConvention c) { return c == DivergenceConvention::Complex ? 2.0 : 1.0; }

struct BoundResult {
  double value = 1.0;      // clamped to [0, 1]; below e^-745 reported as 0
  double log_value = 0.0;  // natural log of the minimized (unclamped) bound
  std::optional<BoundFreeParams> argmin;
  bool feasible() const { return argmin.has_value(); }
};

namespace detail {

inline double log_sum_exp(double a, double b) {
  const double m = std::max(a, b);
  if (m == -std::numeric_limits<double>::infinity()) return m;
  return m + std::log1p(std::exp(std::min(a, b) - m));
}

inline double log_to_probability(double log_value) {
  if (log_value >= 0.0) return 1.0;
  if (log_value < -745.0) return 0.0;
  return std::exp(log_value);
}

}  // namespace detail

/// Order-alpha Renyi divergence (nats) between two zero-mean, unit-variance bivariate
/// Gaussians with correlations `rho_i` and `rho_j`.
inline double renyi_bivariate_gaussian(double alpha, double rho_i, double rho_j) {
  if (!(alpha > 0.0) || alpha == 1.0) throw DomainError("Renyi order must be positive and != 1");
  if (!(rho_i >= 0.0 && rho_i < 1.0 && rho_j >= 0.0 && rho_j < 1.0)) {
    throw DomainError("correlation coefficients must lie in [0, 1)");
  }
  const double mix = alpha * rho_j + (1.0 - alpha) * rho_i;
  const double arg = 1.0 - mix * mix;
  if (!(arg > 0.0)) throw DomainError("Renyi order outside the divergence validity domain");
  const double log_one_minus_j = std::log1p(-rho_j * rho_j);
  const double log_one_minus_i = std::log1p(-rho_i * rho_i);
  return 0.5 * (log_one_minus_j - log_one_minus_i) -
         (std::log1p(-mix * mix) - log_one_minus_j) / (2.0 * (alpha - 1.0));
}

/// Divergence between the joint input/output law of a Gaussian-input channel and the
/// product of its marginals.
inline double channel_divergence(double alpha, const LinkState& link,
                                 DivergenceConvention convention = DivergenceConvention::Complex) {
  return divergence_factor(convention) * renyi_bivariate_gaussian(alpha, link.rho, 0.0);
}

/// Natural log of the (unclamped) reliability bound at fixed free parameters.
inline double reliability_log_bound(const SecrecyCode& code, const LinkState& link_ab, const BoundFreeParams& p,
                                    DivergenceConvention convention = DivergenceConvention::Complex) {
  if (!(p.alpha > 0.0 && p.alpha < 1.0)) throw DomainError("reliability bound needs alpha in (0, 1)");
  const double n = static_cast<double>(code.blocklength);
  const double c = link_ab.capacity_nats;
  const double d = channel_divergence(p.alpha, link_ab, convention);
  const double first = -n * (1.0 - p.alpha) * (d - c + p.lambda_nats);
  const double second = -n * (c - code.rate_nats() - code.local_randomness_nats() - p.lambda_nats);
  return detail::log_sum_exp(first, second);
}

/// Reliability bound phi in [0, 1].
inline double reliability_bound(const SecrecyCode& code, const LinkState& link_ab, const BoundFreeParams& p,
                                DivergenceConvention convention = DivergenceConvention::Complex) {
  return detail::log_to_probability(reliability_log_bound(code, link_ab, p, convention));
}

/// Natural log of the (unclamped) security bound at fixed free parameters.
inline double security_log_bound(const SecrecyCode& code, const LinkState& link_ae, const BoundFreeParams& p,
                                 DivergenceConvention convention = DivergenceConvention::Complex) {
  if (!(p.alpha > 1.0)) throw DomainError("security bound needs alpha > 1");
  const double n = static_cast<double>(code.blocklength);
  const double c = link_ae.capacity_nats;
  const double d = channel_divergence(p.alpha, link_ae, convention);
  const double first = n * (p.alpha - 1.0) * (d - c - p.lambda_nats);
  const double second = -0.5 * n * (code.local_randomness_nats() - c - p.lambda_nats);
  return detail::log_sum_exp(first, second);
}

/// Semantic security level delta in [0, 1].
inline double security_bound(const SecrecyCode& code, const LinkState& link_ae, const BoundFreeParams& p,
                             DivergenceConvention convention = DivergenceConvention::Complex) {
  return detail::log_to_probability(security_log_bound(code, link_ae, p, convention));
}

namespace detail {

inline constexpr int kSeedCount = 64;

/// Seeds in (0, 1), log-spaced toward both ends, ascending.
inline const std::array<double, kSeedCount>& unit_interval_seeds() {
  static const std::array<double, kSeedCount> seeds = [] {
    std::array<double, kSeedCount> s{};
    constexpr int half = kSeedCount / 2;
    for (int k = 0; k < half; ++k) {
      const double x = 0.5 * std::pow(10.0, -8.0 * (1.0 - static_cast<double>(k) / half));
      s[k] = x;
      s[kSeedCount - 1 - k] = 1.0 - x;
    }
    return s;
  }();
  return seeds;
}

inline constexpr double kLambdaRelTol = 1e-10;
inline constexpr double kAlphaFracTol = 1e-13;

/// Minimizes `log_bound(alpha, lambda)` over alpha in (alpha_lo, alpha_hi) and
/// lambda in (0, lambda_hi). Fixed schedule, so results are reproducible bit for bit.
template <typename LogBound>
BoundResult minimize_bound(LogBound&& log_bound, double alpha_lo, double alpha_hi, double lambda_hi) {
  const double span = alpha_hi - alpha_lo;
  auto alpha_at = [&](double frac) { return alpha_lo + frac * span; };
  auto inner = [&](double alpha) {
    return golden_section_minimize([&](double lambda) { return log_bound(alpha, lambda); }, 0.0, lambda_hi,
                                   kLambdaRelTol * lambda_hi);
  };

  const auto& seeds = unit_interval_seeds();
  int best = 0;
  double best_value = std::numeric_limits<double>::infinity();
  for (int i = 0; i < kSeedCount; ++i) {
    const double v = inner(alpha_at(seeds[i])).fx;
    if (v < best_value) {
      best_value = v;
      best = i;
    }
  }
  const double lo = best == 0 ? 0.0 : seeds[best - 1];
  const double hi = best == kSeedCount - 1 ? 1.0 : seeds[best + 1];
  const ScalarMinimum outer =
      golden_section_minimize([&](double frac) { return inner(alpha_at(frac)).fx; }, lo, hi, kAlphaFracTol);

  double frac = outer.x;
  if (best_value < outer.fx) frac = seeds[best];
  const double alpha = alpha_at(frac);
  const ScalarMinimum lam = inner(alpha);

  BoundResult r;
  r.log_value = lam.fx;
  r.value = log_to_probability(lam.fx);
  r.argmin = BoundFreeParams{alpha, lam.x, 0.0};
  return r;
}

}  // namespace detail

/// Smallest reliability bound over alpha in (0, 1) and lambda in (0, C_AB - R - L).
inline BoundResult min_reliability(const SecrecyCode& code, const LinkState& link_ab,
                                   DivergenceConvention convention = DivergenceConvention::Complex) {
  code.validate();
  const double margin = link_ab.capacity_nats - code.rate_nats() - code.local_randomness_nats();
  if (!(margin > 0.0)) return {};
  return detail::minimize_bound(
      [&](double alpha, double lambda) {
        return reliability_log_bound(code, link_ab, {alpha, lambda, 0.0}, convention);
      },
      0.0, 1.0, margin);
}

/// Upper end of the admissible security-bound order for a link with correlation `rho`.
inline double security_alpha_limit(double rho) {
  constexpr double kMaxSpan = 1e12;
  if (rho <= 0.0) return 1.0 + kMaxSpan;
  return 1.0 + std::min(1.0 / rho - 1e-9, kMaxSpan);
}

/// Smallest security bound over alpha in (1, 1 + 1/rho) and lambda in (0, L - C_AE).
inline BoundResult min_security(const SecrecyCode& code, const LinkState& link_ae,
                                DivergenceConvention convention = DivergenceConvention::Complex) {
  code.validate();
  const double margin = code.local_randomness_nats() - link_ae.capacity_nats;
  if (!(margin > 0.0)) return {};
  return detail::minimize_bound(
      [&](double alpha, double lambda) {
        return security_log_bound(code, link_ae, {alpha, lambda, 0.0}, convention);
      },
      1.0, security_alpha_limit(link_ae.rho), margin);
}

/// Lower bound on the eavesdropper's error probability when recovering `bits` bits.
inline double eve_error_floor(double delta, int bits) {
  if (!(delta >= 0.0 && delta <= 1.0)) throw DomainError("delta must lie in [0, 1]");
  if (bits < 1) throw DomainError("bit count must be >= 1");
  return std::max(0.0, 1.0 - delta - std::exp2(-static_cast<double>(bits)));
}

}  // namespace thzsec
