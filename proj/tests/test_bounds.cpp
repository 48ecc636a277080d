#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "oracles.hpp"
#include "thzsec/bounds.hpp"

using namespace thzsec;

namespace {

LinkState link_with_capacity_bits(double bits) { return LinkState::from_snr(std::exp2(bits) - 1.0); }

}  // namespace

TEST(Renyi, IdenticalDistributionsHaveZeroDivergence) {
  for (double rho : {0.0, 0.3, 0.8, 0.99}) {
    for (double alpha : {0.2, 0.7, 1.5, 3.0}) {
      EXPECT_NEAR(renyi_bivariate_gaussian(alpha, rho, rho), 0.0, 1e-12);
    }
  }
}

TEST(Renyi, OrderTwoMatchesQuadrature) {
  // ln of the integral of f_i^2 / f_j, by 2-D adaptive quadrature: 1.0216512475303825.
  EXPECT_NEAR(renyi_bivariate_gaussian(2.0, 0.8, 0.0), 1.0216512475319814, 1e-14);
  EXPECT_NEAR(renyi_bivariate_gaussian(2.0, 0.8, 0.0), 1.0216512475303825, 1e-11);
}

TEST(Renyi, KullbackLeiblerLimit) {
  EXPECT_NEAR(renyi_bivariate_gaussian(1.0 - 1e-7, 0.8, 0.0), 0.51082562376599068, 1e-6);
  EXPECT_NEAR(renyi_bivariate_gaussian(1.0 + 1e-7, 0.8, 0.0), 0.51082562376599068, 1e-6);
}

TEST(Renyi, NonNegativeAgainstIndependentLaw) {
  for (double rho = 0.0; rho < 0.999; rho += 0.05) {
    for (double alpha = 0.05; alpha < 1.0 + 1.0 / std::max(rho, 1e-3) && alpha < 50.0; alpha += 0.1) {
      if (alpha == 1.0) continue;
      EXPECT_GE(renyi_bivariate_gaussian(alpha, rho, 0.0), -1e-15);
    }
  }
}

TEST(Renyi, DomainErrors) {
  EXPECT_THROW(renyi_bivariate_gaussian(1.0, 0.5, 0.0), DomainError);
  EXPECT_THROW(renyi_bivariate_gaussian(0.0, 0.5, 0.0), DomainError);
  EXPECT_THROW(renyi_bivariate_gaussian(3.0, 0.5, 0.0), DomainError);  // 1 + 1/rho = 3
  EXPECT_THROW(renyi_bivariate_gaussian(2.0, 1.0, 0.0), DomainError);
}

TEST(Renyi, NonDecreasingInOrder) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const double rho = 0.01 + 0.98 * u(rng);
    const double top = 1.0 + 1.0 / rho;
    double a = 0.01 + (top - 0.02) * u(rng);
    double b = 0.01 + (top - 0.02) * u(rng);
    if (a > b) std::swap(a, b);
    if (a == 1.0 || b == 1.0 || a == b) continue;
    EXPECT_LE(renyi_bivariate_gaussian(a, rho, 0.0), renyi_bivariate_gaussian(b, rho, 0.0) + 1e-12);
  }
}

TEST(ChannelDivergence, CapacityLimit) {
  for (double rho = 0.1; rho < 0.951; rho += 0.05) {
    const LinkState link = LinkState::from_snr(rho * rho / (1.0 - rho * rho));
    for (double alpha : {1.0 - 1e-6, 1.0 + 1e-6}) {
      EXPECT_NEAR(channel_divergence(alpha, link), link.capacity_nats, 1e-4 * link.capacity_nats);
    }
    EXPECT_NEAR(channel_divergence(1.0 + 1e-6, link, DivergenceConvention::Real), 0.5 * link.capacity_nats,
                1e-4 * link.capacity_nats);
  }
}

TEST(ChannelDivergence, ZeroCorrelation) {
  const LinkState silent = LinkState::from_snr(0.0);
  for (double alpha : {0.3, 1.7, 40.0}) EXPECT_EQ(channel_divergence(alpha, silent), 0.0);
}

TEST(ReliabilityBound, InfeasibleRateClampsToOne) {
  const SecrecyCode code{2000, 0.7, 0.5};
  const LinkState link = link_with_capacity_bits(1.2);
  EXPECT_EQ(reliability_bound(code, link, {0.5, 0.01, 0.0}), 1.0);
  EXPECT_EQ(reliability_bound(code, link, {0.9, 0.3, 0.0}), 1.0);
}

TEST(ReliabilityBound, ReferencePoint) {
  const SecrecyCode code{2000, 0.2, 0.5};
  const double phi = reliability_bound(code, link_with_capacity_bits(1.2), {0.9, 0.1, 0.0});
  EXPECT_NEAR(phi, 1.7106043281483269e-4, 1e-12 * 1.7106043281483269e-4 * 1e3);
}

TEST(ReliabilityBound, DecaysWithBlocklength) {
  const LinkState link = link_with_capacity_bits(1.2);
  double prev = 1.0;
  for (std::int64_t n : {100, 500, 2000, 8000, 32000}) {
    const double phi = reliability_bound({n, 0.2, 0.5}, link, {0.9, 0.1, 0.0});
    EXPECT_LT(phi, prev);
    prev = phi;
  }
}

TEST(ReliabilityBound, RejectsOrderOutsideUnitInterval) {
  EXPECT_THROW(reliability_bound({2000, 0.2, 0.5}, link_with_capacity_bits(1.2), {1.2, 0.1, 0.0}), DomainError);
}

TEST(SecurityBound, NoRandomnessMarginClampsToOne) {
  const LinkState link = link_with_capacity_bits(0.6);
  EXPECT_EQ(security_bound({2000, 0.2, 0.5}, link, {1.5, 0.05, 0.0}), 1.0);
}

TEST(SecurityBound, ReferencePoint) {
  const double delta = security_bound({2000, 0.2, 0.5}, link_with_capacity_bits(0.1), {1.5, 0.05, 0.0});
  EXPECT_NEAR(delta, 8.9141453062419053e-8, 1e-9 * 8.9141453062419053e-8);
}

TEST(SecurityBound, NonIncreasingInLocalRandomness) {
  const LinkState link = link_with_capacity_bits(0.3);
  double prev = 1.0;
  for (double l = 0.3; l < 3.0; l += 0.1) {
    const double d = security_bound({2000, 0.2, l}, link, {1.3, 0.02, 0.0});
    EXPECT_LE(d, prev);
    prev = d;
  }
}

TEST(SecurityBound, RejectsOrderBelowOne) {
  EXPECT_THROW(security_bound({2000, 0.2, 0.5}, link_with_capacity_bits(0.1), {0.9, 0.05, 0.0}), DomainError);
}

TEST(BoundClamping, AlwaysInUnitInterval) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 2000; ++i) {
    const LinkState link = LinkState::from_snr(std::pow(10.0, -2.0 + 4.0 * u(rng)));
    const SecrecyCode code{1 + static_cast<std::int64_t>(5000 * u(rng)), 0.01 + u(rng), 3.0 * u(rng)};
    const double lambda = 2.0 * u(rng);
    const double phi = reliability_bound(code, link, {0.01 + 0.98 * u(rng), lambda, 0.0});
    const double delta = security_bound(code, link, {1.0 + (1.0 / link.rho - 1e-6) * u(rng) + 1e-9, lambda, 0.0});
    EXPECT_GE(phi, 0.0);
    EXPECT_LE(phi, 1.0);
    EXPECT_GE(delta, 0.0);
    EXPECT_LE(delta, 1.0);
  }
}

TEST(MinReliability, InfeasibleWhenCapacityBelowRates) {
  const BoundResult r = min_reliability({2000, 0.7, 0.5}, link_with_capacity_bits(1.2));
  EXPECT_EQ(r.value, 1.0);
  EXPECT_FALSE(r.feasible());
}

TEST(MinSecurity, InfeasibleWhenRandomnessBelowEveCapacity) {
  const BoundResult r = min_security({2000, 0.2, 0.5}, link_with_capacity_bits(0.5));
  EXPECT_EQ(r.value, 1.0);
  EXPECT_FALSE(r.feasible());
}

TEST(MinReliability, NoWorseThanAnyFixedParameterChoice) {
  const SecrecyCode code{2000, 0.2, 0.5};
  const LinkState link = link_with_capacity_bits(1.2);
  const BoundResult r = min_reliability(code, link);
  ASSERT_TRUE(r.feasible());
  EXPECT_LE(r.value, 1.7106043281483269e-4);
  EXPECT_NEAR(reliability_log_bound(code, link, *r.argmin), r.log_value, 1e-12);
}

namespace {

oracle::Instance random_instance(std::mt19937_64& rng, bool for_security) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  oracle::Instance in;
  in.n = std::round(std::pow(10.0, 2.0 + 2.0 * u(rng)));
  in.snr = std::pow(10.0, -1.3 + 3.3 * u(rng));
  const double c_bits = std::log2(1.0 + in.snr);
  in.rate_bits = 0.05 + 0.3 * u(rng) * c_bits;
  if (for_security) {
    in.local_bits = c_bits + 0.02 + 2.0 * u(rng);
  } else {
    in.local_bits = (c_bits - in.rate_bits) * (0.05 + 0.9 * u(rng));
  }
  return in;
}

}  // namespace

TEST(Optimizer, MatchesGridOracleOnRandomInstances) {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 25; ++i) {
    const oracle::Instance rel = random_instance(rng, false);
    const SecrecyCode rc{static_cast<std::int64_t>(rel.n), rel.rate_bits, rel.local_bits};
    const BoundResult r = min_reliability(rc, LinkState::from_snr(rel.snr));
    const oracle::ZoomResult ro = oracle::min_log_phi(rel);
    EXPECT_LE(r.log_value, ro.dense.value + 1e-12 * std::abs(ro.dense.value)) << "instance " << i;
    EXPECT_NEAR(r.log_value, ro.refined.value, 1e-6 * std::abs(ro.refined.value)) << "instance " << i;

    const oracle::Instance sec = random_instance(rng, true);
    const SecrecyCode sc{static_cast<std::int64_t>(sec.n), sec.rate_bits, sec.local_bits};
    const BoundResult s = min_security(sc, LinkState::from_snr(sec.snr));
    const oracle::ZoomResult so = oracle::min_log_delta(sec);
    EXPECT_LE(s.log_value, so.dense.value + 1e-12 * std::abs(so.dense.value)) << "instance " << i;
    EXPECT_NEAR(s.log_value, so.refined.value, 1e-6 * std::abs(so.refined.value)) << "instance " << i;
  }
}

TEST(Optimizer, RealConventionMatchesGridOracle) {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 10; ++i) {
    oracle::Instance sec = random_instance(rng, true);
    sec.factor = 1.0;
    const SecrecyCode sc{static_cast<std::int64_t>(sec.n), sec.rate_bits, sec.local_bits};
    const BoundResult s = min_security(sc, LinkState::from_snr(sec.snr), DivergenceConvention::Real);
    EXPECT_NEAR(s.log_value, oracle::min_log_delta(sec).refined.value, 1e-6 * std::abs(s.log_value));
  }
}

TEST(MinReliability, NonIncreasingInCapacity) {
  const SecrecyCode code{2000, 0.2, 0.5};
  double prev = 1.0;
  for (double c = 0.75; c < 3.0; c += 0.05) {
    const BoundResult r = min_reliability(code, link_with_capacity_bits(c));
    EXPECT_LE(r.value, prev);
    prev = r.value;
    if (c > 0.8 && c < 1.3) {
      oracle::Instance in{2000, std::exp2(c) - 1.0, 0.2, 0.5};
      EXPECT_NEAR(r.log_value, oracle::min_log_phi(in).refined.value, 1e-6 * std::abs(r.log_value));
    }
  }
}

TEST(MinSecurity, NonDecreasingInEveCapacity) {
  const SecrecyCode code{2000, 0.2, 1.0};
  double prev = -std::numeric_limits<double>::infinity();
  for (double c = 0.01; c < 1.0; c += 0.02) {
    const BoundResult r = min_security(code, link_with_capacity_bits(c));
    EXPECT_GE(r.log_value, prev - 1e-9 * std::abs(prev));
    prev = r.log_value;
  }
}

TEST(EveErrorFloor, ReferenceValues) {
  EXPECT_EQ(eve_error_floor(0.0, 1), 0.5);
  EXPECT_EQ(eve_error_floor(1.0, 1), 0.0);
  EXPECT_EQ(eve_error_floor(1.0, 30), 0.0);
  EXPECT_NEAR(eve_error_floor(1e-3, 10), 0.9980234375, 1e-15);
}

TEST(EveErrorFloor, DomainErrors) {
  EXPECT_THROW(eve_error_floor(-0.1, 3), DomainError);
  EXPECT_THROW(eve_error_floor(0.1, 0), DomainError);
}
