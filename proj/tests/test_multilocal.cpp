#include <gtest/gtest.h>

#include "minkcurve/multilocal.hpp"

using namespace mink;

TEST(SelfIntersections, CuspFamilyNegative) {
  auto xs = find_self_intersections({{0, 0, 1}, {0, -0.01, 0, 1}, ""}, -0.5, 0.5);
  ASSERT_EQ(xs.size(), 1u);
  EXPECT_NEAR(xs[0].t1, -0.1, 1e-10);
  EXPECT_NEAR(xs[0].t2, 0.1, 1e-10);
  EXPECT_NEAR(xs[0].point.x, 0.01, 1e-12);
  EXPECT_NEAR(xs[0].point.y, 0.0, 1e-12);
  EXPECT_FALSE(xs[0].tangential);
}

TEST(SelfIntersections, NoneOnCuspOrPositiveSide) {
  EXPECT_TRUE(find_self_intersections({{0, 0, 1}, {0, 0, 0, 1}, ""}, -0.5, 0.5).empty());
  EXPECT_TRUE(find_self_intersections({{0, 0, 1}, {0, 0.01, 0, 1}, ""}, -0.5, 0.5).empty());
}

TEST(SelfIntersections, Loop) {
  // (t^2 - 1, t^3 - t) crosses itself at t = -1, 1.
  auto xs = find_self_intersections({{-1, 0, 1}, {0, -1, 0, 1}, ""}, -1.5, 1.5);
  ASSERT_EQ(xs.size(), 1u);
  EXPECT_NEAR(xs[0].t1, -1, 1e-10);
  EXPECT_NEAR(xs[0].t2, 1, 1e-10);
}

TEST(Features, CuspFamilyNegativeOrder) {
  auto a = analyze_curve({{0, 0, 1}, {0, -0.04, 0, 1}, ""}, -0.25, 0.25);
  EXPECT_EQ(a.features, "X( L V+ L X)");
}

TEST(Features, PlainCusp) {
  auto a = analyze_curve({{0, 0, 1}, {0, 0, 0, 1}, ""}, -0.25, 0.25);
  EXPECT_EQ(a.features, "C");
}

TEST(Features, LightlikeCuspUnfolding) {
  auto a = analyze_curve({{0, 0, 1}, {0, 0, 1.01, 1}, ""}, -0.1, 0.1);
  EXPECT_EQ(a.features, "L V+ C");
}

TEST(Features, OrderedByParameter) {
  Census c;
  SpecialPoint p;
  p.kind = PointKind::Inflection;
  p.t = 0.3;
  c.points.push_back(p);
  p.kind = PointKind::Lightlike;
  p.t = -0.3;
  c.points.push_back(p);
  std::vector<SelfIntersection> xs{{-0.4, 0.1, {}, false, 0}};
  EXPECT_EQ(order_features(c, xs), "X( L X) I");
}
