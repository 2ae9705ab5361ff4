#include "minkcurve/jet.hpp"

namespace mink {

Jet<double> jet_pow_frac(const Jet<double>& a, double p) {
  if (!(a[0] > 0.0))
    throw SingularDenominator("fractional power needs a positive constant term");
  int k = a.order();
  Jet<double> y(k);
  y[0] = std::pow(a[0], p);
  // a y' = p a' y, written for scaled coefficients.
  for (int n = 1; n <= k; ++n) {
    double acc = 0.0;
    for (int j = 1; j <= n; ++j) acc += (p * j - (n - j)) * a[j] * y[n - j];
    y[n] = acc / (n * a[0]);
  }
  return y;
}

Jet<double> jet_abs_pow(const Jet<double>& a, double p) {
  if (a[0] == 0.0) throw SingularDenominator("|f|^p at a zero of f");
  return a[0] > 0 ? jet_pow_frac(a, p) : jet_pow_frac(-a, p);
}

Jet<double> jet_sqrt(const Jet<double>& a) { return jet_pow_frac(a, 0.5); }

Jet<double> jet_revert(const Jet<double>& b) {
  if (b[0] != 0.0 || b.order() < 1 || b[1] == 0.0)
    throw std::invalid_argument("reversion needs b = c1 h + ..., c1 != 0");
  int k = b.order();
  Jet<double> h = Jet<double>::variable(0.0, k);
  // Fixed point r = (h - (b(r) - c1 r)) / c1; each pass fixes one more order.
  Jet<double> r = h * (1.0 / b[1]);
  for (int it = 0; it < k; ++it) {
    Jet<double> br = compose(b, r);
    r = r + (h - br) * (1.0 / b[1]);
  }
  return r;
}

}  // namespace mink
