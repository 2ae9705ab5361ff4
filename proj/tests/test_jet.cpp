#include <gtest/gtest.h>

#include <random>

#include "minkcurve/exact.hpp"
#include "minkcurve/jet.hpp"
#include "minkcurve/poly.hpp"

using namespace mink;

namespace {

void expect_jet(const Jet<double>& j, std::vector<double> want, double tol = 1e-12) {
  ASSERT_EQ(j.c.size(), want.size());
  for (std::size_t i = 0; i < want.size(); ++i) EXPECT_NEAR(j.c[i], want[i], tol) << "coefficient " << i;
}

}  // namespace

TEST(JetEval, MonomialAtOrigin) { expect_jet(jet_eval<double>({0, 0, 1}, 0.0, 3), {0, 0, 1, 0}); }

TEST(JetEval, ShiftedSquare) { expect_jet(jet_eval<double>({0, 0, 1}, 1.0, 2), {1, 2, 1}); }

TEST(JetEval, QuarticAtHalf) {
  expect_jet(jet_eval<double>({0, 0, 0.1, 0, 1}, 0.5, 2), {0.0875, 0.6, 1.6});
}

TEST(JetArithmetic, SquareOfOnePlusT) {
  Jet<double> a({1, 1, 0});
  expect_jet(a * a, {1, 2, 1});
}

TEST(JetArithmetic, GeometricSeries) { expect_jet(1.0 / Jet<double>({1, 1, 0}), {1, -1, 1}); }

TEST(JetArithmetic, ZeroDenominatorThrows) {
  EXPECT_THROW(Jet<double>({1, 0}) / Jet<double>({0, 1}), SingularDenominator);
}

TEST(JetArithmetic, FractionalPower) { expect_jet(jet_pow_frac(Jet<double>({1, 4, 2}), 1.5), {1, 6, 9}); }

TEST(JetArithmetic, AbsPower) {
  expect_jet(jet_abs_pow(Jet<double>({-1, 0, 0}), 1.5), {1, 0, 0});
  expect_jet(jet_abs_pow(Jet<double>({4, 0, 0}), 1.5), {8, 0, 0});
  expect_jet(jet_abs_pow(Jet<double>({1, 2, 0}), 1.5), {1, 3, 1.5});
}

TEST(JetArithmetic, ProductMatchesPolynomialProduct) {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int trial = 0; trial < 50; ++trial) {
    Poly p(7), q(7);
    for (auto& v : p) v = u(rng);
    for (auto& v : q) v = u(rng);
    double t0 = u(rng);
    auto lhs = jet_eval(poly_mul(p, q), t0, 6);
    auto rhs = jet_eval(p, t0, 6) * jet_eval(q, t0, 6);
    for (int i = 0; i <= 6; ++i)
      EXPECT_NEAR(lhs.c[i], rhs.c[i], 1e-12 * std::max(1.0, std::fabs(lhs.c[i])));
  }
}

TEST(JetArithmetic, DivisionRoundTrip) {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int trial = 0; trial < 50; ++trial) {
    Jet<double> a(8), b(8);
    for (auto& v : a.c) v = u(rng);
    for (auto& v : b.c) v = u(rng);
    b.c[0] = 0.5 + std::fabs(b.c[0]);
    auto back = (a / b) * b;
    for (int i = 0; i <= 8; ++i) EXPECT_NEAR(back.c[i], a.c[i], 1e-10 * std::max(1.0, std::fabs(a.c[i])));
  }
}

TEST(JetArithmetic, ReversionInvertsSeries) {
  Jet<double> b({0, 1, 0.5, -0.25, 0.1, 0});
  auto r = jet_revert(b);
  auto id = compose(b, r);
  expect_jet(id, {0, 1, 0, 0, 0, 0}, 1e-12);
}

TEST(PolyRoots, SimplePair) {
  auto r = poly_real_roots({-0.01, 0, 1}, -1, 1);
  ASSERT_EQ(r.size(), 2u);
  EXPECT_NEAR(r[0].t, -0.1, 1e-12);
  EXPECT_NEAR(r[1].t, 0.1, 1e-12);
}

TEST(PolyRoots, DoubleRoot) {
  auto r = poly_real_roots({0, 0, 1}, -1, 1);
  ASSERT_EQ(r.size(), 1u);
  EXPECT_NEAR(r[0].t, 0.0, 1e-7);
  EXPECT_GE(r[0].multiplicity, 2);
}

TEST(PolyRoots, ClosedForm) {
  auto r = poly_real_roots({-0.2, 0, 12}, -0.5, 0.5);
  ASSERT_EQ(r.size(), 2u);
  EXPECT_NEAR(r[1].t, std::sqrt(1.0 / 60), 1e-10);
}

TEST(Exact, LiSubsetValues) {
  auto rows = verify_li_subset_v(5);
  ASSERT_EQ(rows.size(), 5u);
  EXPECT_EQ(rows[0].g2k, Rational(144));
  EXPECT_EQ(rows[1].g2k, Rational(5760));
  for (const auto& r : rows) EXPECT_TRUE(r.pass()) << "k=" << r.k;
}

TEST(Exact, FirstDerivativeVanishes) {
  auto g = g_derivatives_exact({0, 1, 0, 1}, 2);
  EXPECT_EQ(g[0], Rational(0));
  EXPECT_EQ(g[1], Rational(0));
  EXPECT_EQ(g[2], Rational(144));
}
