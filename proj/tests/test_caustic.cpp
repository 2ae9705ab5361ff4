#include <gtest/gtest.h>

#include <cmath>

#include "minkcurve/caustic.hpp"

using namespace mink;

namespace {

PolyCurve pseudo_circle() {
  Poly x(10), y(10);
  double f = 1;
  for (int i = 0; i <= 9; ++i) {
    if (i > 0) f *= i;
    (i % 2 ? x : y)[static_cast<std::size_t>(i)] = 1.0 / f;
  }
  return {x, y, ""};
}

}  // namespace

TEST(Evolute, PseudoCircleCentre) {
  auto e = evolute(pseudo_circle(), 0.0);
  EXPECT_NEAR(e.x, 0.0, 1e-12);
  EXPECT_NEAR(e.y, 0.0, 1e-12);
}

TEST(Evolute, ParabolaCentreSatisfiesBifurcation) {
  PolyCurve c{{0, 1}, {0, 0, 1}, ""};
  auto e = evolute(c, 0.0);
  EXPECT_NEAR(e.x, 0.0, 1e-14);
  EXPECT_NEAR(e.y, -0.5, 1e-14);
  auto [d1, d2] = bif_residual(c, 0.0, e);
  EXPECT_NEAR(d1, 0.0, 1e-14);
  EXPECT_NEAR(d2, 0.0, 1e-14);
  // The opposite point fails the second condition.
  auto [f1, f2] = bif_residual(c, 0.0, {0, 0.5});
  EXPECT_NEAR(f1, 0.0, 1e-14);
  EXPECT_GT(std::fabs(f2), 0.1);
}

TEST(Evolute, NearOrdinaryInflection) {
  double t = 0.01;
  auto e = evolute({{0, 1}, {0, 0, 0, 1}, ""}, t);
  EXPECT_NEAR(e.x, t / 2, 0.05 * t);
  EXPECT_NEAR(e.y, -1.0 / (6 * t), 0.05 / (6 * t));
}

TEST(Caustic, OrdinaryCuspBranchAndLine) {
  auto br = caustic({{0, 0, 1}, {0, 0, 0, 1}, ""}, -0.5, 0.5);
  int lines = 0;
  for (const auto& b : br) {
    if (b.kind == BranchKind::Line) {
      ++lines;
      EXPECT_NEAR(b.point.x, 0, 1e-14);
      EXPECT_NEAR(b.direction.x, 0, 1e-14);
      continue;
    }
    ASSERT_FALSE(b.series.empty());
    const auto& s = b.series.front();
    EXPECT_NEAR(s.u1[2], -1.0, 1e-10);
    EXPECT_NEAR(s.u2[1], -4.0 / 3.0, 1e-10);
  }
  EXPECT_EQ(lines, 1);
}

TEST(Caustic, LightlikeCuspSeries) {
  auto [u1, u2] = caustic_series({{0, 0, 1}, {0, 0, 1, 1}, ""}, 0.0, 4);
  EXPECT_NEAR(u1[2], 5, 1e-10);
  EXPECT_NEAR(u1[3], 9, 1e-10);
  EXPECT_NEAR(u2[2], 5, 1e-10);
  EXPECT_NEAR(u2[3], 4, 1e-10);
}

TEST(Caustic, ThroughLightlikePoint) {
  auto [u1, u2] = caustic_series({{0, 1}, {0, 1, 1}, ""}, 0.0, 3);
  EXPECT_NEAR(u1[0], 0, 1e-14);
  EXPECT_NEAR(u1[1], 3, 1e-12);
  EXPECT_NEAR(u1[2], 6, 1e-12);
  EXPECT_NEAR(u2[1], 3, 1e-12);
  EXPECT_NEAR(u2[2], 3, 1e-12);
}

TEST(Caustic, LambdaClosedForm) {
  PolyCurve c{{0, 1}, {0, 1, 1}, ""};
  for (double t : {-0.3, 0.1, 0.4}) EXPECT_NEAR(caustic_lambda(c, t), -2 * t - 2 * t * t, 1e-13);
}

TEST(Caustic, AsymptoticSamplesFlagged) {
  CausticConfig cfg;
  cfg.box = 2.0;
  auto br = caustic({{0, 1}, {0, 0, 0, 1}, ""}, -0.5, 0.5, cfg);
  int flagged = 0;
  for (const auto& b : br)
    for (const auto& s : b.samples) {
      bool outside = std::max(std::fabs(s.p.x), std::fabs(s.p.y)) > cfg.box;
      EXPECT_EQ(outside, s.asymptotic);
      flagged += s.asymptotic;
    }
  EXPECT_GT(flagged, 0);
}

TEST(Asymptotes, ModelLimits) {
  EXPECT_NEAR(asymptote_model_check({{0, 1}, {0, 0, 0, 1}, ""}, 0, 1).limit, -1.0 / 12, 1e-6);
  EXPECT_NEAR(asymptote_model_check({{0, 1}, {0, 0, 0, 0, 1}, ""}, 0, 2).limit, -1.0 / 27, 1e-6);
  EXPECT_NEAR(asymptote_model_check({{0, 1}, {0, 0, 0, 0, 0, 1}, ""}, 0, 3).limit, -27.0 / 1280, 1e-6);
}

TEST(Sides, ParabolaFocalSideOpposite) {
  auto r = side_checks({{0, 1}, {0, 0, 1}, ""}, 0.0);
  EXPECT_FALSE(r.lightlike);
  EXPECT_TRUE(r.opposite);
}

TEST(Sides, LightlikeCaustic) {
  auto r = side_checks({{0, 1}, {0, 1, 1}, ""}, 0.0);
  EXPECT_TRUE(r.lightlike);
  EXPECT_TRUE(r.opposite);
}

TEST(Sides, LightlikeContactIsOrdinaryTangency) {
  EXPECT_EQ(lightlike_caustic_contact({{0, 1}, {0, 1, 1}, ""}, 0.0), 2);
  EXPECT_EQ(lightlike_caustic_contact({{0, 1}, {0, 1, -0.7, 0.3}, ""}, 0.0), 2);
}
