#include <gtest/gtest.h>

#include <cmath>

#include "minkcurve/minkowski.hpp"

using namespace mink;

namespace {

PolyCurve pseudo_circle(int order) {
  // (sinh t, cosh t) truncated
  Poly x(static_cast<std::size_t>(order) + 1), y(static_cast<std::size_t>(order) + 1);
  double f = 1;
  for (int i = 0; i <= order; ++i) {
    if (i > 0) f *= i;
    (i % 2 ? x : y)[static_cast<std::size_t>(i)] = 1.0 / f;
  }
  return {x, y, ""};
}

}  // namespace

TEST(Pairing, Values) {
  EXPECT_EQ(minkowski_dot({1, 0}, {1, 0}), -1);
  EXPECT_EQ(minkowski_dot({1, 1}, {1, 1}), 0);
  EXPECT_EQ(minkowski_dot({0, 2}, {0, 3}), 6);
}

TEST(Pairing, Perp) {
  auto p = perp({3, -2});
  EXPECT_EQ(p.x, -2);
  EXPECT_EQ(p.y, 3);
  p = perp({1, 1});
  EXPECT_EQ(p.x, 1);
  EXPECT_EQ(p.y, 1);
  EXPECT_EQ(minkowski_dot({3, -2}, perp({3, -2})), 0);
}

TEST(Pairing, CausalCharacter) {
  EXPECT_EQ(causal_character({1, 0}).type, Causal::Timelike);
  EXPECT_EQ(causal_character({0, 1}).type, Causal::Spacelike);
  EXPECT_EQ(causal_character({2, 2}).type, Causal::Lightlike);
  EXPECT_EQ(causal_character({1, 1 + 1e-12}).type, Causal::Lightlike);
}

TEST(Curvature, Parabola) { EXPECT_NEAR(curvature_jet({{0, 1}, {0, 0, 1}, ""}, 0.0, 3)[0], 2.0, 1e-14); }

TEST(Curvature, PseudoCircleIsConstant) {
  auto k = curvature_jet(pseudo_circle(9), 0.0, 5);
  EXPECT_NEAR(k[0], 1.0, 1e-12);
  for (int i = 1; i <= 5; ++i) EXPECT_NEAR(k[i], 0.0, 1e-4) << i;
}

TEST(Curvature, CubicJet) {
  auto k = curvature_jet({{0, 1}, {0, 0, 0, 1}, ""}, 0.0, 4);
  EXPECT_NEAR(k[0], 0, 1e-14);
  EXPECT_NEAR(k[1], 6, 1e-12);
  EXPECT_NEAR(k[2], 0, 1e-12);
  EXPECT_NEAR(k[3], 0, 1e-12);
}

TEST(VertexNumerator, GraphValues) {
  EXPECT_NEAR(g_numerator_jet({0, 0, 0, 1}, 0.0, 2)[0], 6.0, 1e-14);
  auto g = g_numerator_jet({0, 1, 0, 1}, 0.0, 3);
  EXPECT_NEAR(g[0], 0.0, 1e-14);
  EXPECT_NEAR(g.derivative_value(2), 144.0, 1e-10);
}

TEST(MongeTaylor, Cusp) {
  auto j = monge_taylor({{0, 0, 1}, {0, 0, 0, 1}, ""}, 0.0, 3);
  EXPECT_EQ(j.a, (std::vector<double>{0, 1, 0}));
  EXPECT_EQ(j.b, (std::vector<double>{0, 0, 1}));
}

TEST(MongeTaylor, LightlikeInflection) {
  auto j = monge_taylor({{0, 1}, {0, 1, 0, 1}, ""}, 0.0, 3);
  EXPECT_EQ(j.a, (std::vector<double>{1, 0, 0}));
  EXPECT_EQ(j.b, (std::vector<double>{1, 0, 1}));
}

TEST(MongeTaylor, AwayFromOrigin) {
  auto j = monge_taylor({{0, 0, 1}, {0, 1, 0, 1}, ""}, 1.0, 1);
  EXPECT_NEAR(j.a[0], 2, 1e-14);
  EXPECT_NEAR(j.b[0], 4, 1e-14);
}

TEST(Strata, CuspResidual) {
  auto j = monge_taylor({{0, 0, 1}, {0, 0, 0, 1}, ""}, 0.0, 4);
  for (double r : stratum_residual(StratumId::parse("C"), j)) EXPECT_EQ(r, 0.0);
}

TEST(Strata, LightlikeResidual) {
  auto j = monge_taylor({{0, 1}, {0, 1, 0, 1}, ""}, 0.0, 4);
  auto r = stratum_residual(StratumId::parse("L-"), j);
  ASSERT_FALSE(r.empty());
  EXPECT_EQ(r[0], 0.0);
}

TEST(Strata, RamphoidResidual) {
  auto j = monge_taylor({{0, 0, 1}, {0, 0, 0, 0, 1, 1}, ""}, 0.0, 4);
  for (double r : stratum_residual(StratumId::parse("RC"), j)) EXPECT_EQ(r, 0.0);
}

TEST(Strata, NamesRoundTrip) {
  for (const char* n : {"C", "RC", "LC", "I(2)", "V(2)", "LI+", "LI-", "IT", "VT", "LT+", "Tc"})
    EXPECT_EQ(StratumId::parse(n).name(), n);
}

TEST(Strata, InsufficientJetOrderThrows) {
  auto j = monge_taylor({{0, 1}, {0, 0, 1}, ""}, 0.0, 1);
  EXPECT_ANY_THROW(stratum_residual(StratumId::parse("V(2)"), j));
}
