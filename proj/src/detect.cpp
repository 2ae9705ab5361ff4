#include "minkcurve/detect.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace mink {

const char* to_string(PointKind k) {
  switch (k) {
    case PointKind::Lightlike:
      return "lightlike";
    case PointKind::Inflection:
      return "inflection";
    case PointKind::Vertex:
      return "vertex";
    case PointKind::LightlikeInflection:
      return "lightlike_inflection";
    case PointKind::Cusp:
      return "cusp";
  }
  return "?";
}

const char* to_string(VertexDir d) {
  switch (d) {
    case VertexDir::Inward:
      return "inward";
    case VertexDir::Outward:
      return "outward";
    case VertexDir::Undefined:
      return "undefined";
  }
  return "?";
}

const char* to_string(CuspKind k) {
  switch (k) {
    case CuspKind::Ordinary:
      return "ordinary";
    case CuspKind::LightlikeOrdinary:
      return "lightlike_ordinary";
    case CuspKind::Ramphoid:
      return "ramphoid";
    case CuspKind::Other:
      return "other";
  }
  return "?";
}

std::string SpecialPoint::token() const {
  auto ord = [&](const std::string& base) {
    return order == 1 ? base : base + std::to_string(order);
  };
  switch (kind) {
    case PointKind::Lightlike:
      return "L";
    case PointKind::Inflection:
      return ord("I");
    case PointKind::LightlikeInflection:
      return ord("LI");
    case PointKind::Vertex:
      if (order > 1) return "V" + std::to_string(order);
      if (direction == VertexDir::Inward) return "V+";
      if (direction == VertexDir::Outward) return "V-";
      return "V";
    case PointKind::Cusp:
      switch (cusp) {
        case CuspKind::Ordinary:
          return "C";
        case CuspKind::LightlikeOrdinary:
          return "LC";
        case CuspKind::Ramphoid:
          return "RC";
        case CuspKind::Other:
          return "C*";
      }
  }
  return "?";
}

int Census::count(PointKind k) const {
  return static_cast<int>(
      std::count_if(points.begin(), points.end(), [&](const auto& p) { return p.kind == k; }));
}

int Census::count_vertices(VertexDir d) const {
  return static_cast<int>(std::count_if(points.begin(), points.end(), [&](const auto& p) {
    return p.kind == PointKind::Vertex && p.direction == d;
  }));
}

namespace {

// Leading index whose coefficient is significant under the relative rule.
int leading_index(const Jet<double>& j, int from, double rel_zero, double abs_zero) {
  int n = j.order();
  for (int i = from; i <= n; ++i) {
    double later = 0.0;
    for (int k = i + 1; k <= n; ++k)
      if (std::fabs(j[k]) > 1e-300) {
        later = std::fabs(j[k]);
        break;
      }
    double thr = std::max(abs_zero, rel_zero * std::max(1.0, later));
    if (std::fabs(j[i]) > thr) return i;
  }
  return n + 1;
}

double bisect_fn(const JetFn& f, double lo, double hi, double flo, double tol_t) {
  while (hi - lo > tol_t) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    double fm = f(mid, 0)[0];
    if (fm == 0.0) return mid;
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::vector<double> isolate_rec(const JetFn& f, double a, double b, const DetectConfig& cfg,
                                int depth) {
  std::vector<double> brk;
  int n = std::max(2, cfg.grid);
  for (int i = 0; i <= n; ++i) brk.push_back(a + (b - a) * i / n);
  std::vector<double> crit;
  if (depth > 0) {
    JetFn fd = [&f](double t, int k) { return f(t, k + 1).derivative(); };
    crit = isolate_rec(fd, a, b, cfg, depth - 1);
    brk.insert(brk.end(), crit.begin(), crit.end());
    std::sort(brk.begin(), brk.end());
  }
  std::vector<double> v(brk.size());
  for (std::size_t i = 0; i < brk.size(); ++i) v[i] = f(brk[i], 0)[0];

  std::vector<double> roots;
  for (std::size_t i = 0; i < brk.size(); ++i)
    if (std::fabs(v[i]) <= cfg.f_tol) roots.push_back(brk[i]);
  for (std::size_t i = 0; i + 1 < brk.size(); ++i) {
    if (std::fabs(v[i]) <= cfg.f_tol || std::fabs(v[i + 1]) <= cfg.f_tol) continue;
    if ((v[i] < 0) != (v[i + 1] < 0))
      roots.push_back(bisect_fn(f, brk[i], brk[i + 1], v[i], cfg.tol_t));
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace

std::vector<RootEstimate> isolate_roots(const JetFn& f, double a, double b,
                                        const DetectConfig& cfg) {
  if (!(a < b) || !std::isfinite(a) || !std::isfinite(b))
    throw std::invalid_argument("isolate_roots needs a finite interval a < b");
  std::vector<double> raw = isolate_rec(f, a, b, cfg, cfg.derivative_depth);
  std::vector<RootEstimate> out;
  std::size_t i = 0;
  while (i < raw.size()) {
    std::size_t j = i;
    while (j + 1 < raw.size() && raw[j + 1] - raw[i] <= cfg.merge_radius) ++j;
    double t = 0.5 * (raw[i] + raw[j]);
    Jet<double> jt = f(t, cfg.jet_order);
    int m = leading_index(jt, 1, cfg.rel_zero, 0.0);
    out.push_back({t, std::max(1, std::min(m, cfg.jet_order))});
    i = j + 1;
  }
  return out;
}

int contact_order_with_tangent(const PolyCurve& c, double t0, const DetectConfig& cfg) {
  Vec2 d = c.d1(t0);
  if (euclid_norm2(d) == 0.0) throw std::domain_error("contact order at a singular point");
  auto [x, y] = curve_jets(c, t0, cfg.jet_order);
  // h = <gamma - gamma(t0), perp gamma'(t0)> = x'(y - y0) - y'(x - x0).
  Jet<double> h = y * d.x - x * d.y;
  h[0] = 0.0;
  h[1] = 0.0;
  double scale = 0.0;
  for (int i = 0; i <= h.order(); ++i) scale = std::max(scale, std::fabs(h[i]));
  if (scale > 0) h = h * (1.0 / scale);
  int j = leading_index(h, 2, cfg.rel_zero, 1e-13);
  return std::min(j, cfg.jet_order) - 1;
}

CuspInfo classify_cusp_info(const PolyCurve& c, double t0, const DetectConfig& cfg) {
  Vec2 g2 = c.d2(t0);
  double n2 = std::sqrt(euclid_norm2(g2));
  if (n2 == 0.0) throw std::domain_error("unsupported singularity: gamma'' vanishes");
  int K = std::max(8, cfg.jet_order);
  auto [x, y] = curve_jets(c, t0, K);
  Vec2 e{g2.x / n2, g2.y / n2};
  Jet<double> X = x * e.x + y * e.y;
  Jet<double> Y = y * e.x - x * e.y;
  for (int i = 0; i <= 2; ++i) {
    if (i < 2) X[i] = 0.0;
    Y[i] = 0.0;
  }
  double A2 = X[2];
  // psi = X / (A2 h^2), u = h sqrt(psi), so X = A2 u^2.
  Jet<double> psi(K - 2);
  for (int i = 0; i <= K - 2; ++i) psi[i] = X[i + 2] / A2;
  Jet<double> sq = jet_sqrt(psi);
  Jet<double> u(K - 1);
  for (int i = 0; i <= K - 2; ++i) u[i + 1] = sq[i];
  Jet<double> hu = jet_revert(u);
  Jet<double> Yu = compose(Y.truncated(K - 1), hu);
  // Normalise so that x = v^2 exactly with v = sqrt(A2) u.
  std::vector<double> d;
  double s = std::sqrt(std::fabs(A2));
  for (int i = 0; i <= K - 1; ++i) d.push_back(Yu[i] / std::pow(s, i));
  Jet<double> dj(d);

  CuspInfo info;
  info.limiting_tangent = causal_character(g2, cfg.lightlike_tol).type;
  info.odd_coeffs = {d.size() > 3 ? d[3] : 0.0, d.size() > 4 ? d[4] : 0.0,
                     d.size() > 5 ? d[5] : 0.0};
  auto zero = [&](int i) { return leading_index(dj, i, cfg.rel_zero, 1e-13) != i; };
  bool z3 = zero(3), z4 = zero(4), z5 = zero(5);
  if (info.limiting_tangent == Causal::Lightlike) {
    info.kind = z3 ? CuspKind::Other : CuspKind::LightlikeOrdinary;
  } else if (!z3) {
    info.kind = CuspKind::Ordinary;
  } else if (!z4 && !z5) {
    info.kind = CuspKind::Ramphoid;
  } else {
    info.kind = CuspKind::Other;
  }
  return info;
}

CuspKind classify_cusp(const PolyCurve& c, double t0, const DetectConfig& cfg) {
  return classify_cusp_info(c, t0, cfg).kind;
}

namespace {

bool near_any(double t, const std::vector<double>& ts, double r) {
  for (double s : ts)
    if (std::fabs(s - t) <= r) return true;
  return false;
}

double coeff_scale(const Poly& p) {
  double s = 0.0;
  for (double v : p) s = std::max(s, std::fabs(v));
  return s;
}

}  // namespace

Census find_special_points(const PolyCurve& c, double a, double b, const DetectConfig& cfg) {
  c.validate();
  if (!(a < b)) throw std::invalid_argument("window must satisfy a < b");
  Census out;
  out.a = a;
  out.b = b;
  const double mr = cfg.merge_radius;

  Poly xp = poly_trim(poly_derivative(c.x)), yp = poly_trim(poly_derivative(c.y));
  Poly W = curvature_numerator_poly(c);
  Poly V = vertex_poly(c);
  Poly Lm = lightlike_minus_poly(c), Lp = lightlike_plus_poly(c);

  // Singular points: common zeros of x' and y'.
  std::vector<double> cusps;
  {
    int dx = poly_degree(xp), dy = poly_degree(yp);
    const Poly* lead = &xp;
    const Poly* other = &yp;
    if (dx < 1 || (dy >= 1 && dy < dx)) std::swap(lead, other);
    if (poly_degree(*lead) >= 1) {
      double sc = std::max(1.0, coeff_scale(*other));
      for (const auto& r : poly_real_roots(*lead, a, b, mr)) {
        double err;
        double v = poly_eval_bound(*other, r.t, &err);
        if (std::fabs(v) <= std::max(1e-12 * sc, 64 * err)) cusps.push_back(r.t);
      }
    }
  }

  auto value_residuals = [&](double t) {
    return std::vector<std::pair<std::string, double>>{{"kappa_num", poly_eval(W, t)},
                                                       {"vertex_num", poly_eval(V, t)},
                                                       {"light_minus", poly_eval(Lm, t)},
                                                       {"light_plus", poly_eval(Lp, t)}};
  };

  for (double t : cusps) {
    SpecialPoint p;
    p.t = t;
    p.kind = PointKind::Cusp;
    p.cusp = classify_cusp(c, t, cfg);
    p.order = 1;
    p.concentrated_inflections = std::min(root_multiplicity(W, t), cfg.jet_order);
    p.concentrated_vertices = std::min(root_multiplicity(V, t), cfg.jet_order);
    Vec2 d = c.d1(t);
    p.residuals = {{"dx", d.x}, {"dy", d.y}};
    out.points.push_back(p);
  }

  std::vector<double> light_ts;
  for (const Poly* L : {&Lm, &Lp}) {
    if (poly_degree(*L) < 1) continue;
    for (const auto& r : poly_real_roots(*L, a, b, mr)) {
      if (near_any(r.t, cusps, mr) || near_any(r.t, light_ts, mr)) continue;
      light_ts.push_back(r.t);
      SpecialPoint p;
      p.t = r.t;
      // Contact order with the tangent exceeds 1 exactly when the
      // curvature numerator vanishes too; its multiplicity gives the order.
      int k = poly_degree(W) < 0 ? cfg.jet_order : root_multiplicity(W, r.t);
      if (k >= 1) {
        p.kind = PointKind::LightlikeInflection;
        p.order = std::min(k, cfg.jet_order);
        p.order_saturated = k >= cfg.jet_order;
      } else {
        p.kind = PointKind::Lightlike;
      }
      p.residuals = value_residuals(r.t);
      out.points.push_back(p);
    }
  }

  std::vector<double> infl_ts;
  if (poly_degree(W) >= 1) {
    for (const auto& r : poly_real_roots(W, a, b, mr)) {
      if (near_any(r.t, cusps, mr) || near_any(r.t, light_ts, mr)) continue;
      SpecialPoint p;
      p.t = r.t;
      p.kind = PointKind::Inflection;
      p.order = std::min(r.multiplicity, cfg.jet_order);
      p.order_saturated = r.multiplicity >= cfg.jet_order;
      p.residuals = value_residuals(r.t);
      infl_ts.push_back(r.t);
      out.points.push_back(p);
    }
  }

  if (poly_degree(V) >= 1) {
    for (const auto& r : poly_real_roots(V, a, b, mr)) {
      if (near_any(r.t, cusps, mr) || near_any(r.t, light_ts, mr) || near_any(r.t, infl_ts, mr))
        continue;
      SpecialPoint p;
      p.t = r.t;
      p.kind = PointKind::Vertex;
      p.order = std::min(r.multiplicity, cfg.jet_order);
      p.order_saturated = r.multiplicity >= cfg.jet_order;
      if (p.order == 1) {
        try {
          Jet<double> kj = curvature_jet(c, r.t, 2);
          double prod = kj[0] * kj[2];
          if (std::fabs(kj[0]) > 1e-14 && prod != 0.0)
            p.direction = prod > 0 ? VertexDir::Inward : VertexDir::Outward;
        } catch (const SingularDenominator&) {
          p.direction = VertexDir::Undefined;
        }
      }
      p.residuals = value_residuals(r.t);
      out.points.push_back(p);
    }
  }

  std::sort(out.points.begin(), out.points.end(),
            [](const SpecialPoint& l, const SpecialPoint& r) { return l.t < r.t; });
  return out;
}

}  // namespace mink
