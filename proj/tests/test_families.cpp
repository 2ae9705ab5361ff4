#include <gtest/gtest.h>

#include <cmath>

#include "minkcurve/families.hpp"

using namespace mink;

namespace {

const PowerFit* fit_near(const StratumTrace& tr, double c) {
  for (const auto& f : tr.fits)
    if (!f.axis && std::fabs(f.coefficient - c) <= 0.05 * std::fabs(c)) return &f;
  return nullptr;
}

}  // namespace

TEST(Models, Coefficients) {
  auto i2 = model_family("I2").at(-0.01);
  EXPECT_EQ(i2.y, (Poly{0, 0, -0.01, 0, 1}));
  auto lc = model_family("LC").at(0.1, 0.2);
  EXPECT_EQ(lc.x, (Poly{0, 0, 1}));
  ASSERT_EQ(lc.y.size(), 4u);
  EXPECT_DOUBLE_EQ(lc.y[1], 0.1);
  EXPECT_DOUBLE_EQ(lc.y[2], 1.2);
  EXPECT_DOUBLE_EQ(lc.y[3], 1.0);
  EXPECT_THROW(model_family("nope"), std::invalid_argument);
}

TEST(Models, VertexOfOrderTwo) {
  auto c = find_special_points(model_family("V2").at(0.0), -0.2, 0.2);
  ASSERT_EQ(c.points.size(), 1u);
  EXPECT_EQ(c.points[0].kind, PointKind::Vertex);
  EXPECT_EQ(c.points[0].order, 2);
}

TEST(Models, VertexPairUnfolds) {
  auto f = model_family("V2");
  auto neg = find_special_points(f.at(-0.01), -0.2, 0.2);
  EXPECT_EQ(neg.count(PointKind::Vertex), 2);
  EXPECT_EQ(neg.count_vertices(VertexDir::Inward), 1);
  EXPECT_EQ(neg.count_vertices(VertexDir::Outward), 1);
  EXPECT_EQ(find_special_points(f.at(0.01), -0.2, 0.2).count(PointKind::Vertex), 0);
}

TEST(Genericity, Models) {
  for (const auto& n : model_family_names()) EXPECT_TRUE(check_genericity(model_family(n)).generic) << n;
}

TEST(Genericity, OneParameterLightlikeCuspIsDegenerate) {
  ParamFamily f = model_family("LC");
  f.arity = 1;
  f.y = MPoly::var(1) * MPoly::var(0) + pow(MPoly::var(0), 2) + pow(MPoly::var(0), 3);
  EXPECT_FALSE(check_genericity(f).generic);
}

TEST(Census, Models) {
  EXPECT_EQ(analyze_curve(model_family("I2").at(-0.01), -0.5, 0.5).features, "I V- I");
  EXPECT_EQ(analyze_curve(model_family("I2").at(0.01), -0.5, 0.5).features, "V+");
  EXPECT_EQ(analyze_curve(model_family("LI").at(-0.03), -0.5, 0.5).features, "L I L");
  EXPECT_EQ(analyze_curve(model_family("LI").at(0.03), -0.5, 0.5).features, "V- I V-");
}

TEST(Strata, LightlikeCuspInflection) {
  auto tr = trace_stratum(model_family("LC"), StratumId::parse("LI-"));
  const auto* f = fit_near(tr, 1.0 / 3.0);
  ASSERT_NE(f, nullptr);
  EXPECT_EQ(f->exponent_round, 2.0);
  EXPECT_EQ(f->independent, 2);
  EXPECT_LT(tr.max_residual, 1e-10);
}

TEST(Strata, LightlikeCuspVertexBranches) {
  auto tr = trace_stratum(model_family("LC"), StratumId::parse("V(2)"));
  double r5 = 2 * std::sqrt(5.0);
  EXPECT_NE(fit_near(tr, (5 - r5) / 25), nullptr);
  EXPECT_NE(fit_near(tr, (5 + r5) / 25), nullptr);
}

TEST(Strata, ResultantAgreesWithSystem) {
  auto f = model_family("LC");
  auto tr = trace_stratum(f, StratumId::parse("V(2)"));
  auto res = lc_vertex2_resultant(f, 1e-3, 0.05, 1e-3);
  ASSERT_EQ(res.size(), 4u);  // two branches on each side of s2 = 0
  EXPECT_LE(hausdorff_resultant_vs_trace(res, tr, 1e-3, 0.05), 1e-6);
}

TEST(Strata, RamphoidTangency) {
  auto tr = trace_stratum(model_family("RC"), StratumId::parse("Tc"));
  const auto* f = fit_near(tr, 0.25);
  ASSERT_NE(f, nullptr);
  EXPECT_EQ(f->exponent_round, 2.0);
  EXPECT_EQ(f->independent, 1);
  ASSERT_FALSE(f->sides.empty());
  for (int s : f->sides) EXPECT_LT(s, 0);
}

TEST(Strata, RamphoidEmptyLightlikeStrata) {
  auto f = model_family("RC");
  for (const char* n : {"LI+", "LI-", "LT+", "LT-"}) EXPECT_TRUE(trace_stratum(f, StratumId::parse(n)).empty()) << n;
}

TEST(Strata, OneParameterPoints) {
  auto tr = trace_stratum(model_family("I2"), StratumId::parse("I(2)"));
  ASSERT_EQ(tr.points.size(), 1u);
  EXPECT_NEAR(tr.points[0].s, 0.0, 1e-10);
}

TEST(Sweep, RegionsChangeOnlyAcrossStrata) {
  auto f = model_family("C");
  auto sw = census_sweep(f, -0.05, 0.05, 21);
  EXPECT_EQ(sw.n1, 21);
  EXPECT_EQ(sw.n2, 1);
  EXPECT_GE(sw.regions, 2);
  auto rep = region_check(f, sw, trace_all(f));
  EXPECT_TRUE(rep.violations.empty());
  EXPECT_GT(rep.changing_pairs, 0);
}

TEST(Sweep, MissingStratumIsReported) {
  auto f = model_family("I2");
  auto sw = census_sweep(f, -0.05, 0.05, 11);
  auto rep = region_check(f, sw, {});
  EXPECT_FALSE(rep.violations.empty());
}
