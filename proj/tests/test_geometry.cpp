#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "thzsec/geometry.hpp"

using namespace thzsec;

namespace {

ScenarioConfig cell_config() {
  ScenarioConfig c;
  c.variant = ScenarioVariant::Cell;
  c.height_difference_m = 3.5;
  c.alice.boresight_gain_dbi = 10.0;
  c.alice.beamwidth_override_deg = beamwidth_for_cone_radius(7.2, 3.5);
  c.bob.boresight_gain_dbi = 10.0;
  c.eve.boresight_gain_dbi = 10.0;
  return c;
}

ScenarioConfig directed_config() {
  ScenarioConfig c;
  c.variant = ScenarioVariant::Directed;
  c.room = {0.0, 40.0, -20.0, 20.0};
  c.height_difference_m = 8.5;
  c.horizontal_distance_m = 15.0;
  c.alice.boresight_gain_dbi = 20.0;
  c.bob.boresight_gain_dbi = 20.0;
  c.eve.boresight_gain_dbi = 25.0;
  c.transmit_power_w = 0.5e-3;
  return c;
}

}  // namespace

TEST(OffsetAngle, ReferenceDirections) {
  EXPECT_NEAR(offset_angle({1, 0, 0}, {0, 0, 0}, {5, 0, 0}), 0.0, 1e-15);
  EXPECT_NEAR(offset_angle({1, 0, 0}, {0, 0, 0}, {0, 3, 0}), std::numbers::pi / 2, 1e-15);
  EXPECT_NEAR(offset_angle({1, 0, 0}, {0, 0, 0}, {-2, 0, 0}), std::numbers::pi, 1e-15);
  EXPECT_NEAR(offset_angle({0, 0, -1}, {0, 0, 3.5}, {7.2, 0, 0}), 1.1183214372328298, 1e-14);
}

TEST(OffsetAngle, CoincidentPointsRejected) {
  EXPECT_THROW(offset_angle({0, 0, -1}, {1, 2, 3}, {1, 2, 3}), DomainError);
}

TEST(BuildScenario, CellNadir) {
  const auto c = cell_config();
  const auto p = build_scenario(c, 0.0);
  EXPECT_NEAR(norm(p.bob.position - p.alice.position), 3.5, 1e-15);
  EXPECT_EQ(offset_angle(p.alice.boresight, p.alice.position, p.bob.position), 0.0);
  EXPECT_EQ(p.alice.boresight, (Vec3{0, 0, -1}));
  EXPECT_EQ(p.bob.position.z, c.receiver_height_m);
}

TEST(BuildScenario, CellEdgeSitsOnHalfPowerAngle) {
  const auto c = cell_config();
  const double r_b = cone_radius(c.alice, c.height_difference_m);
  const auto p = build_scenario(c, r_b);
  const double theta = deg_to_rad(beamwidth_from_gain(c.alice));
  EXPECT_NEAR(offset_angle(p.alice.boresight, p.alice.position, p.bob.position), theta / 2.0, 1e-14);
  EXPECT_NEAR(pattern_gain(c.alice, offset_angle(p.alice.boresight, p.alice.position, p.bob.position)),
              c.alice.boresight_gain() / 2.0, 1e-13);
}

TEST(BuildScenario, CellRejectsBobOutsideDisk) {
  const auto c = cell_config();
  EXPECT_THROW(build_scenario(c, 7.3), OutOfCell);
  EXPECT_THROW(build_scenario(c, std::array<double, 2>{5.2, 5.2}), OutOfCell);
  EXPECT_NO_THROW(build_scenario(c, std::array<double, 2>{5.0, 5.0}));
}

TEST(BuildScenario, DirectedSlantDistanceAndAlignment) {
  const auto c = directed_config();
  const auto p = build_scenario(c, 15.0);
  EXPECT_NEAR(norm(p.bob.position - p.alice.position), 17.240939649566667, 1e-12);
  EXPECT_NEAR(offset_angle(p.alice.boresight, p.alice.position, p.bob.position), 0.0, 1e-7);
  EXPECT_NEAR(norm(p.alice.boresight), 1.0, 1e-12);
  EXPECT_NEAR(norm(p.bob.boresight), 1.0, 1e-12);
  EXPECT_EQ(p.alice.position.x, c.room.x_min);
  EXPECT_EQ(p.alice.position.z, c.receiver_height_m + 8.5);
}

TEST(BuildScenario, DirectedRejectsBobOutsideRoom) {
  EXPECT_THROW(build_scenario(directed_config(), 45.0), DomainError);
}

TEST(EveGrid, FencepostCount) {
  ScenarioConfig c = cell_config();
  c.room = {0.0, 10.0, 0.0, 10.0};
  const auto pts = eve_positions(c, 5.0);
  ASSERT_EQ(pts.size(), 9u);
  EXPECT_EQ(pts[0], (Vec3{0, 0, 1.0}));
  EXPECT_EQ(pts[1], (Vec3{5, 0, 1.0}));  // row-major, x fastest
  EXPECT_EQ(pts[3], (Vec3{0, 5, 1.0}));
  EXPECT_EQ(pts[8], (Vec3{10, 10, 1.0}));
}

TEST(EveGrid, SharedHeightAndMirrorSymmetry) {
  ScenarioConfig c = cell_config();
  c.room = {-10.0, 10.0, -7.0, 7.0};
  const auto g = eve_grid(c, 0.3);  // extent not a multiple of the step
  for (std::size_t i = 0; i < g.size(); ++i) EXPECT_EQ(g.at(i).z, c.receiver_height_m);
  for (std::size_t i = 0; i < g.nx(); ++i) EXPECT_NEAR(g.xs[i], -g.xs[g.nx() - 1 - i], 1e-12);
  for (std::size_t i = 0; i < g.ny(); ++i) EXPECT_NEAR(g.ys[i], -g.ys[g.ny() - 1 - i], 1e-12);
}

TEST(EveGrid, RejectsNonPositiveResolution) {
  EXPECT_THROW(eve_grid(cell_config(), 0.0), DomainError);
}

TEST(EveLink, UsesAlicePatternAtOffset) {
  const auto c = cell_config();
  const auto p = build_scenario(c, 0.0);
  const Vec3 eve{12.0, -5.0, c.receiver_height_m};
  const double offset = offset_angle(p.alice.boresight, p.alice.position, eve);
  const LinkState expected = link_budget(c.transmit_power_w, pattern_gain(c.alice, offset), c.eve.boresight_gain(),
                                         norm(eve - p.alice.position), c.environment);
  const LinkState got = eve_link(c, p.alice, eve);
  EXPECT_DOUBLE_EQ(got.snr, expected.snr);
}

TEST(EveLink, CellRadialSymmetry) {
  const auto c = cell_config();
  const auto p = build_scenario(c, 0.0);
  for (double r : {0.5, 3.0, 9.0, 21.0}) {
    const double ref = eve_link(c, p.alice, {r, 0.0, 1.0}).snr;
    for (double phi = 0.1; phi < 2 * std::numbers::pi; phi += 0.7) {
      const Vec3 e{r * std::cos(phi), r * std::sin(phi), 1.0};
      EXPECT_NEAR(eve_link(c, p.alice, e).snr, ref, 1e-12 * ref);
    }
  }
}
