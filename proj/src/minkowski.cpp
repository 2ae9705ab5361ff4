#include "minkcurve/minkowski.hpp"

#include <cmath>
#include <regex>
#include <stdexcept>

namespace mink {

CausalCharacter causal_character(Vec2 u, double tol) {
  double n2 = euclid_norm2(u);
  if (n2 == 0.0) throw std::invalid_argument("causal character of the zero vector");
  double q = minkowski_dot(u, u);
  if (std::fabs(q) <= tol * n2) return {Causal::Lightlike, q};
  return {q > 0 ? Causal::Spacelike : Causal::Timelike, q};
}

const char* to_string(Causal c) {
  switch (c) {
    case Causal::Spacelike:
      return "spacelike";
    case Causal::Timelike:
      return "timelike";
    case Causal::Lightlike:
      return "lightlike";
  }
  return "?";
}

Vec2 PolyCurve::point(double t) const { return {poly_eval(x, t), poly_eval(y, t)}; }
Vec2 PolyCurve::d1(double t) const {
  return {poly_eval(poly_derivative(x), t), poly_eval(poly_derivative(y), t)};
}
Vec2 PolyCurve::d2(double t) const {
  return {poly_eval(poly_derivative(poly_derivative(x)), t),
          poly_eval(poly_derivative(poly_derivative(y)), t)};
}
PolyCurve PolyCurve::derivative() const {
  return {poly_derivative(x), poly_derivative(y), label};
}
PolyCurve PolyCurve::swapped() const { return {y, x, label}; }

void PolyCurve::validate() const {
  if (poly_degree(x) < 1 && poly_degree(y) < 1)
    throw std::invalid_argument("curve has two constant components");
}

std::pair<Jet<double>, Jet<double>> curve_jets(const PolyCurve& c, double t0, int k) {
  return {jet_eval(c.x, t0, k), jet_eval(c.y, t0, k)};
}

Poly curvature_numerator_poly(const PolyCurve& c) {
  Poly x1 = poly_derivative(c.x), y1 = poly_derivative(c.y);
  Poly x2 = poly_derivative(x1), y2 = poly_derivative(y1);
  return poly_trim(poly_sub(poly_mul(x1, y2), poly_mul(x2, y1)));
}

Poly speed_poly(const PolyCurve& c) {
  Poly x1 = poly_derivative(c.x), y1 = poly_derivative(c.y);
  return poly_trim(poly_sub(poly_mul(y1, y1), poly_mul(x1, x1)));
}

Poly lightlike_minus_poly(const PolyCurve& c) {
  return poly_trim(poly_sub(poly_derivative(c.x), poly_derivative(c.y)));
}

Poly lightlike_plus_poly(const PolyCurve& c) {
  return poly_trim(poly_add(poly_derivative(c.x), poly_derivative(c.y)));
}

Poly vertex_poly(const PolyCurve& c) {
  Poly a1 = poly_derivative(c.x), b1 = poly_derivative(c.y);
  Poly a2 = poly_scale(poly_derivative(a1), 0.5), b2 = poly_scale(poly_derivative(b1), 0.5);
  Poly a3 = poly_scale(poly_derivative(poly_derivative(a1)), 1.0 / 6.0);
  Poly b3 = poly_scale(poly_derivative(poly_derivative(b1)), 1.0 / 6.0);
  Poly q = poly_sub(poly_mul(a1, a1), poly_mul(b1, b1));
  Poly w3 = poly_sub(poly_mul(a1, b3), poly_mul(a3, b1));
  Poly m = poly_sub(poly_mul(b1, b2), poly_mul(a1, a2));
  Poly w = poly_sub(poly_mul(a1, b2), poly_mul(a2, b1));
  return poly_trim(poly_add(poly_mul(q, w3), poly_scale(poly_mul(m, w), 2.0)));
}

Jet<double> curvature_numerator_jet(const PolyCurve& c, double t0, int k) {
  return jet_eval(curvature_numerator_poly(c), t0, k);
}

Jet<double> vertex_numerator_jet(const PolyCurve& c, double t0, int k) {
  return jet_eval(vertex_poly(c), t0, k);
}

Jet<double> curvature_jet(const PolyCurve& c, double t0, int k) {
  auto [x, y] = curve_jets(c, t0, k + 2);
  Jet<double> x1 = x.derivative(), y1 = y.derivative();
  Jet<double> x2 = x1.derivative().truncated(k), y2 = y1.derivative().truncated(k);
  x1 = x1.truncated(k);
  y1 = y1.truncated(k);
  Jet<double> w = x1 * y2 - x2 * y1;
  Jet<double> q = y1 * y1 - x1 * x1;
  double n2 = x1[0] * x1[0] + y1[0] * y1[0];
  if (n2 == 0.0) throw SingularDenominator("curvature at a singular point");
  if (std::fabs(q[0]) <= kLightlikeTol * n2)
    throw SingularDenominator("curvature at a lightlike point");
  return w * jet_abs_pow(q, -1.5);
}

Jet<double> g_numerator_jet(const Poly& f, double t0, int k) {
  Jet<double> j = jet_eval(f, t0, k + 3);
  Jet<double> f1 = j.derivative();
  Jet<double> f2 = f1.derivative();
  Jet<double> f3 = f2.derivative();
  f1 = f1.truncated(k);
  f2 = f2.truncated(k);
  return f3 * (1.0 - f1 * f1) + 3.0 * (f1 * f2 * f2);
}

JetCoords monge_taylor(const PolyCurve& c, double t, int k) {
  auto [x, y] = curve_jets(c, t, k);
  JetCoords j;
  j.a0 = x[0];
  j.b0 = y[0];
  for (int i = 1; i <= k; ++i) {
    j.a.push_back(x[i]);
    j.b.push_back(y[i]);
  }
  return j;
}

std::pair<JetCoords, JetCoords> bi_monge_taylor(const PolyCurve& c, double t1, double t2, int k) {
  if (t1 == t2) throw std::invalid_argument("bi-jet needs two distinct parameters");
  return {monge_taylor(c, t1, k), monge_taylor(c, t2, k)};
}

std::string StratumId::name() const {
  std::string s;
  switch (kind) {
    case StratumKind::C:
      return "C";
    case StratumKind::RC:
      return "RC";
    case StratumKind::LC:
      return "LC";
    case StratumKind::IT:
      return "IT";
    case StratumKind::VT:
      return "VT";
    case StratumKind::Tc:
      return "Tc";
    case StratumKind::L:
      s = "L";
      break;
    case StratumKind::LT:
      s = "LT";
      break;
    case StratumKind::I:
      s = "I(" + std::to_string(k) + ")";
      break;
    case StratumKind::LI:
      s = k == 1 ? "LI" : "LI(" + std::to_string(k) + ")";
      break;
    case StratumKind::V:
      s = "V(" + std::to_string(k) + ")";
      break;
  }
  if (sign > 0) s += "+";
  if (sign < 0) s += "-";
  return s;
}

bool StratumId::bilocal() const {
  return kind == StratumKind::IT || kind == StratumKind::VT || kind == StratumKind::LT ||
         kind == StratumKind::Tc;
}

StratumId StratumId::parse(const std::string& text) {
  static const std::regex re(R"(^(C|RC|LC|L|I|LI|V|IT|VT|LT|Tc)(?:\(?(\d+)\)?)?([+-])?$)");
  std::smatch m;
  if (!std::regex_match(text, m, re)) throw std::invalid_argument("unknown stratum '" + text + "'");
  static const std::pair<const char*, StratumKind> names[] = {
      {"C", StratumKind::C},   {"RC", StratumKind::RC}, {"LC", StratumKind::LC},
      {"L", StratumKind::L},   {"I", StratumKind::I},   {"LI", StratumKind::LI},
      {"V", StratumKind::V},   {"IT", StratumKind::IT}, {"VT", StratumKind::VT},
      {"LT", StratumKind::LT}, {"Tc", StratumKind::Tc}};
  StratumId id{StratumKind::C, 1, 0};
  for (const auto& [n, kd] : names)
    if (m[1] == n) id.kind = kd;
  if (m[2].matched) {
    id.k = std::stoi(m[2]);
    bool ordered = id.kind == StratumKind::I || id.kind == StratumKind::LI ||
                   id.kind == StratumKind::V;
    if (!ordered || id.k < 1) throw std::invalid_argument("bad stratum order in '" + text + "'");
  }
  if (m[3].matched) {
    bool light = id.kind == StratumKind::L || id.kind == StratumKind::LI ||
                 id.kind == StratumKind::LT;
    if (!light) throw std::invalid_argument("sign only applies to lightlike strata");
    id.sign = m[3] == "+" ? 1 : -1;
  }
  return id;
}

int stratum_jet_order(const StratumId& id) {
  switch (id.kind) {
    case StratumKind::C:
    case StratumKind::L:
    case StratumKind::LT:
    case StratumKind::Tc:
      return 1;
    case StratumKind::LC:
    case StratumKind::IT:
      return 2;
    case StratumKind::RC:
    case StratumKind::VT:
      return 3;
    case StratumKind::I:
    case StratumKind::LI:
      return id.k + 1;
    case StratumKind::V:
      return id.k + 2;
  }
  return 1;
}

bool stratum_member(const StratumId& id, const std::vector<double>& r, double tol) {
  bool pair = id.sign == 0 && (id.kind == StratumKind::L || id.kind == StratumKind::LI ||
                               id.kind == StratumKind::LT);
  std::size_t first = id.kind == StratumKind::LT ? 2 : 0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (pair && (i == first || i == first + 1)) continue;
    if (std::fabs(r[i]) > tol) return false;
  }
  if (pair) return std::min(std::fabs(r[first]), std::fabs(r[first + 1])) <= tol;
  return true;
}

}  // namespace mink
