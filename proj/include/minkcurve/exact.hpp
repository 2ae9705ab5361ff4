#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <vector>

#include "minkcurve/jet.hpp"

namespace mink {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// g^(n)(0), n = 0..nmax, for the graph (t, f(t)), f given by exact
// ascending coefficients; computed with rational jets.
std::vector<Rational> g_derivatives_exact(const std::vector<Rational>& f, int nmax);

// g^(n)(0) from the Leibniz-expanded closed formula in the Taylor
// coefficients a_i = f^(i)(0)/i!.
Rational g_derivative_recurrence(const std::vector<Rational>& a, int n);

BigInt factorial(int n);

struct LiSubsetRow {
  int k = 0;
  bool low_orders_vanish = false;  // g^(j)(0) = 0 for 1 <= j <= 2k-1 (and j = 0)
  Rational g2k;                    // computed g^(2k)(0)
  Rational expected;               // (2k)!(k+2)^2(k+1)(k+3)
  bool recurrence_agrees = false;  // recurrence equals jet values for all n <= 2k+1
  bool pass() const { return low_orders_vanish && g2k == expected && recurrence_agrees; }
};

// For k = 1..kmax uses f = t + t^(k+2).
std::vector<LiSubsetRow> verify_li_subset_v(int kmax);

}  // namespace mink
