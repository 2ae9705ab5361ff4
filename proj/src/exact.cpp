#include "minkcurve/exact.hpp"

#include <stdexcept>

namespace mink {

BigInt factorial(int n) {
  BigInt r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

namespace {
Rational fact(int n) { return Rational(factorial(n)); }

BigInt binom(int n, int k) { return factorial(n) / (factorial(k) * factorial(n - k)); }
}  // namespace

std::vector<Rational> g_derivatives_exact(const std::vector<Rational>& f, int nmax) {
  int k = nmax;
  Jet<Rational> j = jet_eval(f, Rational(0), k + 3);
  Jet<Rational> f1 = j.derivative();
  Jet<Rational> f2 = f1.derivative();
  Jet<Rational> f3 = f2.derivative();
  f1 = f1.truncated(k);
  f2 = f2.truncated(k);
  Jet<Rational> g = f3 * (Rational(1) - f1 * f1) + Rational(3) * (f1 * f2 * f2);
  std::vector<Rational> out;
  for (int n = 0; n <= k; ++n) out.push_back(g.derivative_value(n));
  return out;
}

Rational g_derivative_recurrence(const std::vector<Rational>& a, int n) {
  auto A = [&](int i) { return i < static_cast<int>(a.size()) ? a[i] : Rational(0); };
  Rational r = fact(n + 3) * A(n + 3);
  for (int i = 0; i <= n; ++i) {
    Rational inner = 0;
    for (int l = 0; l <= n - i; ++l)
      inner += Rational(binom(n - i, l)) * fact(n - i - l + 1) * fact(l + 1) *
               A(n - i - l + 1) * A(l + 1);
    r -= Rational(binom(n, i)) * fact(i + 3) * A(i + 3) * inner;
  }
  for (int j = 0; j <= n; ++j) {
    Rational inner = 0;
    for (int l = 0; l <= j; ++l)
      inner += Rational(binom(j, l)) * fact(j - l + 2) * fact(l + 2) * A(j - l + 2) * A(l + 2);
    r += 3 * Rational(binom(n, j)) * fact(n - j + 1) * A(n - j + 1) * inner;
  }
  return r;
}

std::vector<LiSubsetRow> verify_li_subset_v(int kmax) {
  if (kmax < 1 || kmax > 6) throw std::invalid_argument("kmax must be in 1..6");
  std::vector<LiSubsetRow> rows;
  for (int k = 1; k <= kmax; ++k) {
    std::vector<Rational> f(static_cast<std::size_t>(k) + 3, Rational(0));
    f[1] = 1;
    f[static_cast<std::size_t>(k) + 2] = 1;
    auto g = g_derivatives_exact(f, 2 * k + 1);
    LiSubsetRow row;
    row.k = k;
    row.low_orders_vanish = true;
    for (int j = 0; j <= 2 * k - 1; ++j)
      if (g[j] != 0) row.low_orders_vanish = false;
    row.g2k = g[2 * k];
    row.expected = fact(2 * k) * (k + 2) * (k + 2) * (k + 1) * (k + 3);
    row.recurrence_agrees = true;
    for (int n = 0; n <= 2 * k + 1; ++n)
      if (g_derivative_recurrence(f, n) != g[n]) row.recurrence_agrees = false;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace mink
