#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace mink {

// Raised when a jet division or power hits a zero constant term.
struct SingularDenominator : std::domain_error {
  using std::domain_error::domain_error;
};

constexpr int kDefaultJetOrder = 12;

// Truncated Taylor series c0 + c1 h + ... + ck h^k, with c_i = f^(i)(t0)/i!.
template <class T>
class Jet {
 public:
  std::vector<T> c;

  Jet() : c(1, T(0)) {}
  explicit Jet(int k) : c(static_cast<std::size_t>(k) + 1, T(0)) {
    if (k < 0) throw std::invalid_argument("jet order must be non-negative");
  }
  Jet(std::vector<T> coeffs) : c(std::move(coeffs)) {
    if (c.empty()) c.push_back(T(0));
  }

  static Jet constant(const T& v, int k) {
    Jet j(k);
    j.c[0] = v;
    return j;
  }
  // The identity t0 + h.
  static Jet variable(const T& t0, int k) {
    Jet j(k);
    j.c[0] = t0;
    if (k >= 1) j.c[1] = T(1);
    return j;
  }

  int order() const { return static_cast<int>(c.size()) - 1; }
  const T& operator[](std::size_t i) const { return c[i]; }
  T& operator[](std::size_t i) { return c[i]; }

  // i-th derivative at t0 (i! c_i).
  T derivative_value(int i) const {
    T f(1);
    for (int j = 2; j <= i; ++j) f *= T(j);
    return c[static_cast<std::size_t>(i)] * f;
  }

  // Jet of f' at the same point; order drops by one.
  Jet derivative() const {
    int k = order();
    if (k == 0) return Jet(0);
    Jet d(k - 1);
    for (int i = 0; i < k; ++i) d.c[i] = c[i + 1] * T(i + 1);
    return d;
  }

  Jet truncated(int k) const {
    Jet r(k);
    for (int i = 0; i <= k && i <= order(); ++i) r.c[i] = c[i];
    return r;
  }

  Jet& operator+=(const Jet& o) {
    check_same(o);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += o.c[i];
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    check_same(o);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] -= o.c[i];
    return *this;
  }
  Jet& operator*=(const T& s) {
    for (auto& v : c) v *= s;
    return *this;
  }
  Jet& operator+=(const T& s) {
    c[0] += s;
    return *this;
  }

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator-(Jet a) {
    for (auto& v : a.c) v = -v;
    return a;
  }
  friend Jet operator*(Jet a, const T& s) { return a *= s; }
  friend Jet operator*(const T& s, Jet a) { return a *= s; }
  friend Jet operator+(Jet a, const T& s) { return a += s; }
  friend Jet operator+(const T& s, Jet a) { return a += s; }
  friend Jet operator-(Jet a, const T& s) {
    a.c[0] -= s;
    return a;
  }
  friend Jet operator-(const T& s, Jet a) { return (-a) + s; }

  friend Jet operator*(const Jet& a, const Jet& b) {
    a.check_same(b);
    int k = a.order();
    Jet r(k);
    for (int i = 0; i <= k; ++i) {
      if (a.c[i] == T(0)) continue;
      for (int j = 0; i + j <= k; ++j) r.c[i + j] += a.c[i] * b.c[j];
    }
    return r;
  }
  Jet& operator*=(const Jet& o) { return *this = *this * o; }

  friend Jet operator/(const Jet& a, const Jet& b) {
    a.check_same(b);
    if (b.c[0] == T(0))
      throw SingularDenominator("jet division by a series with zero constant term");
    int k = a.order();
    Jet q(k);
    for (int n = 0; n <= k; ++n) {
      T acc = a.c[n];
      for (int j = 1; j <= n; ++j) acc -= b.c[j] * q.c[n - j];
      q.c[n] = acc / b.c[0];
    }
    return q;
  }
  friend Jet operator/(const T& s, const Jet& b) { return constant(s, b.order()) / b; }
  friend Jet operator/(Jet a, const T& s) {
    for (auto& v : a.c) v /= s;
    return a;
  }

  void check_same(const Jet& o) const {
    if (o.c.size() != c.size()) throw std::invalid_argument("jet orders differ");
  }
};

// a(b(h)) where b has zero constant term.
template <class T>
Jet<T> compose(const Jet<T>& a, const Jet<T>& b) {
  a.check_same(b);
  if (b.c[0] != T(0)) throw std::invalid_argument("compose needs b.c0 = 0");
  int k = a.order();
  Jet<T> r = Jet<T>::constant(a.c[k], k);
  for (int i = k - 1; i >= 0; --i) r = r * b + a.c[i];
  return r;
}

// Taylor jet of a polynomial (ascending coefficients) at t0.
template <class T>
Jet<T> jet_eval(const std::vector<T>& poly, const T& t0, int k) {
  Jet<T> r(k);
  if (poly.empty()) return r;
  // Repeated synthetic division gives p^(i)(t0)/i! directly.
  std::vector<T> b(poly);
  int n = static_cast<int>(b.size()) - 1;
  for (int i = 0; i <= k && i <= n; ++i) {
    for (int j = n - 1; j >= i; --j) b[j] += t0 * b[j + 1];
    r.c[i] = b[i];
  }
  return r;
}

// Power with real exponent; needs a positive constant term.
Jet<double> jet_pow_frac(const Jet<double>& a, double p);
// |f|^p, sign-corrected.
Jet<double> jet_abs_pow(const Jet<double>& a, double p);
Jet<double> jet_sqrt(const Jet<double>& a);
// Series reversion: given b = h + ..., returns r with b(r(h)) = h.
Jet<double> jet_revert(const Jet<double>& b);

}  // namespace mink
