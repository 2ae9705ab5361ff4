#pragma once

#include <array>
#include <optional>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "minkcurve/jet.hpp"
#include "minkcurve/poly.hpp"

namespace mink {

struct Vec2 {
  double x = 0.0, y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }

// <u,v> = -u1 v1 + u2 v2
inline double minkowski_dot(Vec2 u, Vec2 v) { return -u.x * v.x + u.y * v.y; }
inline Vec2 perp(Vec2 u) { return {u.y, u.x}; }
inline double euclid_norm2(Vec2 u) { return u.x * u.x + u.y * u.y; }

enum class Causal { Spacelike, Timelike, Lightlike };

struct CausalCharacter {
  Causal type;
  double residual;  // <u,u>
};

constexpr double kLightlikeTol = 1e-9;

CausalCharacter causal_character(Vec2 u, double tol = kLightlikeTol);
const char* to_string(Causal c);

struct PolyCurve {
  Poly x, y;
  std::string label;

  Vec2 point(double t) const;
  Vec2 d1(double t) const;
  Vec2 d2(double t) const;
  PolyCurve derivative() const;
  // (x,y) -> (y,x), the isometry used for spacelike curves.
  PolyCurve swapped() const;
  void validate() const;
};

// Jets of the two components at t0.
std::pair<Jet<double>, Jet<double>> curve_jets(const PolyCurve& c, double t0, int k);

// Numerator of kappa: <gamma'', gamma'^perp> = x'y'' - x''y'.
Poly curvature_numerator_poly(const PolyCurve& c);
// <gamma', gamma'> = -x'^2 + y'^2.
Poly speed_poly(const PolyCurve& c);
// Lightlike factors x' - y' and x' + y'.
Poly lightlike_minus_poly(const PolyCurve& c);
Poly lightlike_plus_poly(const PolyCurve& c);
// Numerator of kappa' in jet coordinates, as a polynomial in t.
Poly vertex_poly(const PolyCurve& c);

Jet<double> curvature_numerator_jet(const PolyCurve& c, double t0, int k = kDefaultJetOrder);
Jet<double> vertex_numerator_jet(const PolyCurve& c, double t0, int k = kDefaultJetOrder);
Jet<double> curvature_jet(const PolyCurve& c, double t0, int k = kDefaultJetOrder);
// g = f'''(1 - f'^2) + 3 f' f''^2 for the graph (t, f(t)).
Jet<double> g_numerator_jet(const Poly& f, double t0, int k = kDefaultJetOrder);

// Monge-Taylor coordinates a_i = x^(i)(t)/i!, b_i = y^(i)(t)/i!, i = 1..k,
// plus the position (a0, b0).
template <class T>
struct JetCoordsT {
  T a0{}, b0{};
  std::vector<T> a, b;  // a[i-1] = a_i
  int order() const { return static_cast<int>(a.size()); }
  const T& A(int i) const { return i == 0 ? a0 : a.at(static_cast<std::size_t>(i - 1)); }
  const T& B(int i) const { return i == 0 ? b0 : b.at(static_cast<std::size_t>(i - 1)); }
};
using JetCoords = JetCoordsT<double>;

JetCoords monge_taylor(const PolyCurve& c, double t, int k);
std::pair<JetCoords, JetCoords> bi_monge_taylor(const PolyCurve& c, double t1, double t2, int k);

enum class StratumKind { C, RC, LC, L, I, LI, V, IT, VT, LT, Tc };

struct StratumId {
  StratumKind kind;
  int k = 1;
  // For L, LI and LT: +1 selects a1 + b1, -1 selects a1 - b1, 0 keeps both.
  int sign = 0;
  std::string name() const;
  bool bilocal() const;
  static StratumId parse(const std::string& s);
};

// Highest jet index used by a stratum's equations.
int stratum_jet_order(const StratumId& id);

class MPoly;

// Integer multiple v*x for every scalar type used in the expressions below.
template <class T>
T times(int v, const T& x) {
  if constexpr (requires { x.c; }) {
    return x * typename decltype(x.c)::value_type(v);
  } else if constexpr (std::is_same_v<T, MPoly>) {
    return x * static_cast<double>(v);
  } else {
    return T(v) * x;
  }
}

// Jet-coordinate expressions, generic in the scalar type.
template <class T>
T inflection_expr(const JetCoordsT<T>& j) {
  return j.A(1) * j.B(2) - j.A(2) * j.B(1);
}

template <class T>
T vertex_expr(const JetCoordsT<T>& j) {
  const T &a1 = j.A(1), &a2 = j.A(2), &a3 = j.A(3);
  const T &b1 = j.B(1), &b2 = j.B(2), &b3 = j.B(3);
  return (a1 * a1 - b1 * b1) * (a1 * b3 - a3 * b1) +
         times(2, (b1 * b2 - a1 * a2) * (a1 * b2 - a2 * b1));
}

// Second V(2) equation as listed for the lightlike cusp; equals -dV/dt / 2.
template <class T>
T vertex2_expr(const JetCoordsT<T>& j) {
  const T &a1 = j.A(1), &a2 = j.A(2), &a3 = j.A(3), &a4 = j.A(4);
  const T &b1 = j.B(1), &b2 = j.B(2), &b3 = j.B(3), &b4 = j.B(4);
  return (-a1 * a1 + b1 * b1) * (times(2, a1 * b4 - a4 * b1) + a2 * b3 - a3 * b2) -
         (a1 * b3 - a3 * b1) * (b1 * b2 - a1 * a2) -
         (a1 * b2 - a2 * b1) * (times(3, b1 * b3 - a1 * a3) + times(2, b2 * b2 - a2 * a2));
}

// Second V(2) equation exactly as printed for the ramphoid cusp.
template <class T>
T vertex2_ramphoid_expr(const JetCoordsT<T>& j) {
  const T &a1 = j.A(1), &a2 = j.A(2), &a3 = j.A(3), &a4 = j.A(4);
  const T &b1 = j.B(1), &b2 = j.B(2), &b3 = j.B(3), &b4 = j.B(4);
  T q = -a1 * a1 + b1 * b1;
  T w = a1 * b2 - a2 * b1;
  T m = b1 * b2 - a1 * a2;
  return times(2, w * (-q * (-a2 * a2 + b2 * b2) + times(5, m * m))) +
         q * ((times(4, a2 * b3) + times(4, a3 * b2)) * a1 * a1 -
              times(9, (a2 * a3 + b2 * b3) * a1 * b1) +
              (times(4, a2 * b3) + times(5, a3 * b2)) * b1 * b1) +
         times(2, q * q * (a1 * b4 - a4 * b1));
}

// Coordinates of the curve at t + h as jets in h, from coordinates at t.
// Order of the result is k - i for a_i; all are truncated to `order`.
template <class T>
JetCoordsT<Jet<T>> shift_coords(const JetCoordsT<T>& j, int need, int order) {
  JetCoordsT<Jet<T>> r;
  int K = j.order();
  auto coeff = [&](bool isa, int i) {
    Jet<T> s(order);
    for (int m = 0; m <= order && i + m <= K; ++m) {
      long long binom = 1;
      for (int q = 1; q <= m; ++q) binom = binom * (i + q) / q;
      s.c[m] = times(static_cast<int>(binom), isa ? j.A(i + m) : j.B(i + m));
    }
    return s;
  };
  r.a0 = coeff(true, 0);
  r.b0 = coeff(false, 0);
  for (int i = 1; i <= need; ++i) {
    r.a.push_back(coeff(true, i));
    r.b.push_back(coeff(false, i));
  }
  return r;
}

// Residual vector of a stratum at a jet point (local strata) or a pair of
// jet points (bi-local strata).  Throws if the jet order is insufficient.
template <class T>
std::vector<T> stratum_residual(const StratumId& id, const JetCoordsT<T>& p,
                                const JetCoordsT<T>* q = nullptr);

// Whether a residual vector puts the point on the stratum.  For the signed
// lightlike component pair either component may vanish.
bool stratum_member(const StratumId& id, const std::vector<double>& r, double tol);

}  // namespace mink

#include "minkcurve/minkowski_impl.hpp"
