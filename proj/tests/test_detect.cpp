#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "minkcurve/detect.hpp"

using namespace mink;

namespace {

std::string tokens(const Census& c) {
  std::string s;
  for (const auto& p : c.points) s += (s.empty() ? "" : " ") + p.token();
  return s;
}

}  // namespace

TEST(IsolateRoots, Pair) {
  auto f = [](double t, int k) { return jet_eval<double>({-0.01, 0, 1}, t, k); };
  auto r = isolate_roots(f, -1, 1);
  ASSERT_EQ(r.size(), 2u);
  EXPECT_NEAR(r[0].t, -0.1, 1e-12);
  EXPECT_NEAR(r[1].t, 0.1, 1e-12);
  EXPECT_EQ(r[0].multiplicity, 1);
}

TEST(IsolateRoots, Tangential) {
  auto f = [](double t, int k) { return jet_eval<double>({0, 0, 1}, t, k); };
  auto r = isolate_roots(f, -1, 1);
  ASSERT_EQ(r.size(), 1u);
  EXPECT_GE(r[0].multiplicity, 2);
}

TEST(SpecialPoints, InwardVertexOnly) {
  auto c = find_special_points({{0, 1}, {0, 0, 0.1, 0, 1}, ""}, -0.5, 0.5);
  ASSERT_EQ(c.points.size(), 1u);
  EXPECT_EQ(c.points[0].kind, PointKind::Vertex);
  EXPECT_EQ(c.points[0].direction, VertexDir::Inward);
  EXPECT_NEAR(c.points[0].t, 0.0, 1e-12);
}

TEST(SpecialPoints, TwoInflectionsAndOutwardVertex) {
  auto c = find_special_points({{0, 1}, {0, 0, -0.1, 0, 1}, ""}, -0.5, 0.5);
  ASSERT_EQ(tokens(c), "I V- I");
  double r = std::sqrt(0.2 / 12);
  EXPECT_NEAR(c.points[0].t, -r, 1e-10);
  EXPECT_NEAR(c.points[2].t, r, 1e-10);
}

TEST(SpecialPoints, LightlikePair) {
  auto c = find_special_points({{0, 1}, {0, 0.97, 0, 1}, ""}, -0.3, 0.3);
  ASSERT_EQ(tokens(c), "L I L");
  EXPECT_NEAR(c.points[0].t, -0.1, 1e-10);
  EXPECT_NEAR(c.points[2].t, 0.1, 1e-10);
}

TEST(SpecialPoints, DefiningResidualVanishes) {
  auto c = find_special_points({{0, 1}, {0, 0.97, 0, 1}, ""}, -0.3, 0.3);
  for (const auto& p : c.points) {
    std::map<std::string, double> r(p.residuals.begin(), p.residuals.end());
    ASSERT_EQ(r.size(), 4u);
    if (p.kind == PointKind::Lightlike)
      EXPECT_LT(std::min(std::fabs(r["light_minus"]), std::fabs(r["light_plus"])), 1e-12);
    else
      EXPECT_LT(std::fabs(r["kappa_num"]), 1e-12);
  }
}

TEST(ContactOrder, Parabola) {
  EXPECT_EQ(contact_order_with_tangent({{0, 1}, {0, 0, 1}, ""}, 0.0), 1);
}

TEST(ContactOrder, LightlikeInflections) {
  EXPECT_EQ(contact_order_with_tangent({{0, 1}, {0, 1, 0, 1}, ""}, 0.0), 2);
  EXPECT_EQ(contact_order_with_tangent({{0, 1}, {0, 1, 0, 0, 1}, ""}, 0.0), 3);
  auto c = find_special_points({{0, 1}, {0, 1, 0, 0, 1}, ""}, -0.5, 0.5);
  ASSERT_EQ(c.points.size(), 1u);
  EXPECT_EQ(c.points[0].kind, PointKind::LightlikeInflection);
  EXPECT_EQ(c.points[0].order, 2);
}

TEST(ContactOrder, LightlikeInflectionIsHighOrderVertex) {
  // LI(k) is a vertex of order 2k.
  for (int k = 1; k <= 3; ++k) {
    Poly y(static_cast<std::size_t>(k) + 3, 0.0);
    y[1] = 1;
    y[static_cast<std::size_t>(k) + 2] = 1;
    PolyCurve curve{{0, 1}, y, ""};
    auto c = find_special_points(curve, -0.5, 0.5);
    ASSERT_EQ(c.points.size(), 1u) << k;
    EXPECT_EQ(c.points[0].kind, PointKind::LightlikeInflection);
    EXPECT_EQ(c.points[0].order, k);
    EXPECT_EQ(root_multiplicity(vertex_poly(curve), 0.0), 2 * k);
  }
}

TEST(Cusps, Classification) {
  EXPECT_EQ(classify_cusp({{0, 0, 1}, {0, 0, 0, 1}, ""}, 0.0), CuspKind::Ordinary);
  EXPECT_EQ(classify_cusp({{0, 0, 1}, {0, 0, 1, 1}, ""}, 0.0), CuspKind::LightlikeOrdinary);
  EXPECT_EQ(classify_cusp({{0, 0, 1}, {0, 0, 0, 0, 1, 1}, ""}, 0.0), CuspKind::Ramphoid);
}

TEST(Cusps, SpecialPointToken) {
  auto c = find_special_points({{0, 0, 1}, {0, 0, 1, 1}, ""}, -0.5, 0.5);
  ASSERT_EQ(tokens(c), "LC");
}

TEST(Census, Counts) {
  auto c = find_special_points({{0, 1}, {0, 0, -0.1, 0, 1}, ""}, -0.5, 0.5);
  EXPECT_EQ(c.count(PointKind::Inflection), 2);
  EXPECT_EQ(c.count(PointKind::Vertex), 1);
  EXPECT_EQ(c.count_vertices(VertexDir::Outward), 1);
  EXPECT_EQ(c.count_vertices(VertexDir::Inward), 0);
}
