#include "minkcurve/families.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <optional>
#include <numeric>
#include <stdexcept>

#include "minkcurve/solve.hpp"

namespace mink {

namespace {

MPoly T() { return MPoly::var(0); }
MPoly S1() { return MPoly::var(1); }
MPoly S2() { return MPoly::var(2); }

// Coefficient of t^i, as a polynomial in the parameters.
MPoly coef_t(const MPoly& p, int i) {
  MPoly r;
  for (const auto& [e, c] : p.terms)
    if (e[0] == i) {
      Exps f = e;
      f[0] = 0;
      r.terms[f] += c;
    }
  return r;
}

double at_origin(const MPoly& p) {
  double z[kMaxVars] = {0, 0, 0, 0};
  return p.eval(z);
}

double d_origin(const MPoly& p, int var) { return at_origin(p.derivative(var)); }

}  // namespace

PolyCurve ParamFamily::at(double s1, double s2) const {
  double v[kMaxVars] = {0.0, s1, s2, 0.0};
  return {poly_trim(x.univariate(0, v)), poly_trim(y.univariate(0, v)), name};
}

const std::vector<std::string>& model_family_names() {
  static const std::vector<std::string> names{"I2", "I3", "LI", "LI2", "C", "LC", "RC", "V2"};
  return names;
}

ParamFamily model_family(const std::string& name) {
  ParamFamily f;
  f.name = name;
  f.singularity = name;
  MPoly t = T(), s1 = S1(), s2 = S2();
  if (name == "I2") {
    f.x = t;
    f.y = pow(t, 4) + s1 * pow(t, 2);
  } else if (name == "I3") {
    f.arity = 2;
    f.x = t;
    f.y = pow(t, 5) + s1 * pow(t, 2) + s2 * pow(t, 3);
  } else if (name == "LI") {
    f.x = t;
    f.y = (1.0 + s1) * t + pow(t, 3);
  } else if (name == "LI2") {
    f.arity = 2;
    f.x = t;
    f.y = (1.0 + s1) * t + s2 * pow(t, 2) + pow(t, 4);
    f.window_lo = -0.4;
    f.window_hi = 0.4;
  } else if (name == "C") {
    f.x = pow(t, 2);
    f.y = s1 * t + pow(t, 3);
  } else if (name == "LC") {
    f.arity = 2;
    f.x = pow(t, 2);
    f.y = s1 * t + (1.0 + s2) * pow(t, 2) + pow(t, 3);
  } else if (name == "RC") {
    f.arity = 2;
    f.x = pow(t, 2);
    f.y = s2 * t + s1 * pow(t, 3) + pow(t, 4) + pow(t, 5) + pow(t, 6);
    f.window_lo = -0.6;
    f.window_hi = 0.6;
  } else if (name == "V2") {
    f.x = t;
    f.y = 0.5 * pow(t, 2) + s1 * pow(t, 3) - 0.125 * pow(t, 4) + pow(t, 5);
  } else {
    throw std::invalid_argument("unknown model family '" + name + "'");
  }
  return f;
}

GenericityReport check_genericity(const ParamFamily& f) {
  GenericityReport rep;
  auto add = [&](const std::string& n, double v) {
    rep.conditions.push_back({n, v, true, std::isfinite(v) && std::fabs(v) > 1e-12});
  };
  auto undefined = [&](const std::string& n) { rep.conditions.push_back({n, NAN, false, false}); };
  // det of (d coef_t(y, j) / d s_k), rows j in js, needs arity == js.size().
  auto versal = [&](const std::string& n, const MPoly& p, const std::vector<int>& js) {
    std::size_t m = js.size();
    if (static_cast<std::size_t>(f.arity) != m) {
      undefined(n);
      return;
    }
    Eigen::MatrixXd a(m, m);
    for (std::size_t r = 0; r < m; ++r)
      for (std::size_t k = 0; k < m; ++k) a(r, k) = d_origin(coef_t(p, js[r]), 1 + k);
    add(n, a.determinant());
  };
  const std::string& s = f.singularity;
  const MPoly& y = f.y;
  if (s == "I2") {
    add("c4", at_origin(coef_t(y, 4)));
    versal("d(c2)/ds", y, {2});
  } else if (s == "I3") {
    add("c5", at_origin(coef_t(y, 5)));
    versal("det d(c2,c3)/ds", y, {2, 3});
  } else if (s == "LI") {
    add("c3", at_origin(coef_t(y, 3)));
    versal("d(c1)/ds", y, {1});
  } else if (s == "LI2") {
    add("c4", at_origin(coef_t(y, 4)));
    versal("det d(c1,c2)/ds", y, {1, 2});
  } else if (s == "C") {
    add("c3", at_origin(coef_t(y, 3)));
    versal("d2y/dsdt", y, {1});
  } else if (s == "LC") {
    add("c3", at_origin(coef_t(y, 3)));
    if (f.arity >= 1) add("d(c1)/ds1", d_origin(coef_t(y, 1), 1));
    versal("det d(c1,c2)/ds", y, {1, 2});
  } else if (s == "RC") {
    add("c4", at_origin(coef_t(y, 4)));
    add("c5", at_origin(coef_t(y, 5)));
    add("c6", at_origin(coef_t(y, 6)));
    versal("det d(c1,c3)/ds", y, {1, 3});
  } else if (s == "V2") {
    MPoly f1 = y.derivative(0), f2 = f1.derivative(0), f3 = f2.derivative(0);
    MPoly g = f3 * (1.0 - f1 * f1) + 3.0 * (f1 * f2 * f2);
    double g0 = at_origin(g), g1 = at_origin(g.derivative(0));
    rep.conditions.push_back({"g(0)", g0, true, std::fabs(g0) <= 1e-12});
    rep.conditions.push_back({"g'(0)", g1, true, std::fabs(g1) <= 1e-12});
    add("g''(0)", at_origin(g.derivative(0).derivative(0)));
    add("kappa(0)", at_origin(f2));
    if (f.arity == 1)
      add("dg/ds", d_origin(g, 1));
    else
      undefined("dg/ds");
  } else {
    throw std::invalid_argument("no genericity conditions for '" + s + "'");
  }
  for (const auto& c : rep.conditions) rep.generic = rep.generic && c.pass;
  return rep;
}

const std::vector<StratumId>& boundary_strata() {
  static const std::vector<StratumId> ids{
      {StratumKind::C, 1, 0},  {StratumKind::I, 2, 0},  {StratumKind::LI, 1, 1},
      {StratumKind::LI, 1, -1}, {StratumKind::V, 2, 0},  {StratumKind::IT, 1, 0},
      {StratumKind::VT, 1, 0}, {StratumKind::LT, 1, 1}, {StratumKind::LT, 1, -1},
      {StratumKind::Tc, 1, 0}};
  return ids;
}

StratumSystem stratum_system(const ParamFamily& f, const StratumId& id) {
  StratumSystem ss;
  ss.id = id;
  ss.arity = f.arity;
  ss.nt = id.bilocal() ? 2 : 1;
  int k = std::max(stratum_jet_order(id), 4);
  auto jets = [&](const MPoly& p) {
    std::vector<MPoly> j;
    MPoly d = p;
    double fact = 1.0;
    for (int i = 0; i <= k; ++i) {
      j.push_back(d * (1.0 / fact));
      d = d.derivative(0);
      fact *= i + 1;
    }
    return j;
  };
  auto coords = [&](const std::array<int, kMaxVars>& map) {
    auto jx = jets(f.x), jy = jets(f.y);
    JetCoordsT<MPoly> c;
    c.a0 = jx[0].remap(map);
    c.b0 = jy[0].remap(map);
    for (int i = 1; i <= k; ++i) {
      c.a.push_back(jx[i].remap(map));
      c.b.push_back(jy[i].remap(map));
    }
    return c;
  };
  if (!id.bilocal()) {
    ss.eqs = stratum_residual<MPoly>(id, coords({0, 1, 2, 3}));
  } else {
    auto p = coords({0, 2, 3, 3});
    auto q = coords({1, 2, 3, 3});
    ss.eqs = stratum_residual<MPoly>(id, p, &q);
    ss.eqs[0] = p.a0.divided_difference(0, 1);
    ss.eqs[1] = p.b0.divided_difference(0, 1);
  }
  for (auto& e : ss.eqs) e.prune(1e-300);
  return ss;
}

bool StratumTrace::germ_empty() const {
  return std::none_of(curves.begin(), curves.end(),
                      [](const TracedCurve& c) { return c.through_origin; });
}

namespace {

double pt_seg_dist(const Eigen::VectorXd& p, const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  Eigen::VectorXd d = b - a;
  double l2 = d.squaredNorm();
  double u = l2 > 0 ? std::clamp((p - a).dot(d) / l2, 0.0, 1.0) : 0.0;
  return (a + u * d - p).lpNorm<Eigen::Infinity>();
}

struct Tracer {
  const ParamFamily& fam;
  StratumSystem ss;
  PolySystem sys;
  TraceConfig cfg;

  Tracer(const ParamFamily& f, const StratumId& id, const TraceConfig& c)
      : fam(f), ss(stratum_system(f, id)), sys(ss.eqs, ss.nvars()), cfg(c) {}

  int nt() const { return ss.nt; }
  std::array<double, 2> s_of(const Eigen::VectorXd& x) const {
    return {x[nt()], ss.arity == 2 ? x[nt() + 1] : 0.0};
  }
  double s_norm(const Eigen::VectorXd& x) const {
    auto s = s_of(x);
    return std::max(std::fabs(s[0]), std::fabs(s[1]));
  }

  // Rejects the spurious components the deflated systems carry along.
  bool valid(const Eigen::VectorXd& x) const {
    auto s = s_of(x);
    PolyCurve c = fam.at(s[0], s[1]);
    const StratumKind kd = ss.id.kind;
    if (ss.nt == 2 && std::fabs(x[0] - x[1]) < cfg.separation) return false;
    if (ss.nt == 2 && kd == StratumKind::Tc && x[0] > x[1]) return false;
    if (kd == StratumKind::C) return true;
    // Singular points solve every homogeneous stratum equation; near the
    // origin the cusp line has |gamma'| far below |s|.
    const double sing = std::max(cfg.singular_tol, 1e-4 * std::max(std::fabs(s[0]), std::fabs(s[1])));
    for (int i = 0; i < ss.nt; ++i) {
      Vec2 d = c.d1(x[i]);
      if (std::max(std::fabs(d.x), std::fabs(d.y)) <= sing) return false;
    }
    if (kd == StratumKind::V) {
      Vec2 d = c.d1(x[0]);
      if (std::fabs(minkowski_dot(d, d)) <= 1e-9 * euclid_norm2(d)) return false;
    }
    return true;
  }

  std::vector<double> t_of(const Eigen::VectorXd& x) const {
    return std::vector<double>(x.data(), x.data() + nt());
  }

  double residual(const Eigen::VectorXd& x) const {
    auto s = s_of(x);
    PolyCurve c = fam.at(s[0], s[1]);
    int k = std::max(stratum_jet_order(ss.id), 4);
    JetCoords p = monge_taylor(c, x[0], k);
    std::vector<double> r;
    if (ss.nt == 2) {
      JetCoords q = monge_taylor(c, x[1], k);
      r = stratum_residual<double>(ss.id, p, &q);
    } else {
      r = stratum_residual<double>(ss.id, p);
    }
    double m = 0.0;
    for (double v : r) m = std::max(m, std::fabs(v));
    return m;
  }

  std::vector<Interval> t_box() const {
    return std::vector<Interval>(nt(), Interval(fam.window_lo, fam.window_hi));
  }

  SubdivisionConfig sub_cfg() const {
    SubdivisionConfig sc;
    sc.max_boxes = 200000;
    if (ss.nt == 2) {
      double sep = cfg.separation;
      sc.keep = [sep](const std::vector<Interval>& b) {
        return b[1].hi - b[0].lo >= sep || b[0].hi - b[1].lo >= sep;
      };
    }
    return sc;
  }

  // Zeros on the parameter segment P + sigma D, sigma in [0,1].
  std::vector<Eigen::VectorXd> segment_seeds(std::array<double, 2> P, std::array<double, 2> D) {
    const int sb = nt();
    std::vector<MPoly> eqs;
    for (const auto& e : ss.eqs) {
      MPoly q;
      if (D[1] == 0.0) {
        q = e.substitute(sb + 1, P[1]).affine_substitute(sb, P[0], D[0]);
      } else {
        std::array<int, kMaxVars> map{0, 1, 2, 3};
        map[sb + 1] = sb;
        q = e.substitute(sb, P[0]).affine_substitute(sb + 1, P[1], D[1]).remap(map);
      }
      eqs.push_back(q);
    }
    PolySystem seg(eqs, sb + 1);
    auto box = t_box();
    box.push_back(Interval(0.0, 1.0));
    std::vector<Eigen::VectorXd> out;
    for (const auto& r : solve_subdivision(seg, box, sub_cfg()).roots) {
      Eigen::VectorXd x(ss.nvars());
      for (int i = 0; i < sb; ++i) x[i] = r[i];
      x[sb] = P[0] + r[sb] * D[0];
      x[sb + 1] = P[1] + r[sb] * D[1];
      if (valid(x)) out.push_back(x);
    }
    return out;
  }

  bool on_known(const Eigen::VectorXd& x, const std::vector<std::vector<Eigen::VectorXd>>& paths) {
    for (const auto& p : paths) {
      if (p.size() == 1 && (p[0] - x).lpNorm<Eigen::Infinity>() <= 1e-6) return true;
      // Chords deviate from the curve by O(h^2); allow a share of the step.
      for (std::size_t i = 0; i + 1 < p.size(); ++i) {
        double h = (p[i + 1] - p[i]).lpNorm<Eigen::Infinity>();
        if (pt_seg_dist(x, p[i], p[i + 1]) <= 1e-6 + 0.05 * h) return true;
      }
    }
    return false;
  }

  std::vector<Eigen::VectorXd> trace_from(const Eigen::VectorXd& x0, bool& origin) {
    const double B = cfg.box * 1.002;
    auto check = [&](const Eigen::VectorXd& x) {
      if (!valid(x)) return StepVerdict::StopDrop;
      if (s_norm(x) > B) return StepVerdict::StopKeep;
      for (int i = 0; i < nt(); ++i)
        if (x[i] < fam.window_lo || x[i] > fam.window_hi) return StepVerdict::StopKeep;
      if (s_norm(x) < cfg.origin_stop) return StepVerdict::StopKeep;
      return StepVerdict::Continue;
    };
    auto cap = [&](const Eigen::VectorXd& x, const Eigen::VectorXd& tau) {
      double ts = 0.0;
      for (int i = nt(); i < ss.nvars(); ++i) ts = std::max(ts, std::fabs(tau[i]));
      double c = cfg.step_max;
      if (ts > 0) c = std::min(c, std::max(cfg.step_rel * s_norm(x) / ts, 1e-12));
      return c;
    };
    ContinuationConfig cc;
    cc.hmax = cfg.step_max;
    Eigen::VectorXd tau = curve_tangent(sys, x0).dir;
    auto fwd = continue_path(sys, x0, tau, cc, check, cap);
    auto bwd = continue_path(sys, x0, -tau, cc, check, cap);
    std::vector<Eigen::VectorXd> pts(bwd.points.rbegin(), bwd.points.rend());
    pts.push_back(x0);
    pts.insert(pts.end(), fwd.points.begin(), fwd.points.end());
    const double near0 = cfg.ring;
    origin = false;
    Eigen::VectorXd zero = Eigen::VectorXd::Zero(ss.nvars());
    if (s_norm(pts.back()) <= near0) {
      origin = true;
      pts.push_back(zero);
    }
    if (s_norm(pts.front()) <= near0) {
      origin = true;
      pts.insert(pts.begin(), zero);
    } else if (origin) {
      // Start every germ ray at the origin.
      std::reverse(pts.begin(), pts.end());
    }
    return pts;
  }
};

// Fit of |s_dep| = c |s_ind|^e (1 + k1 t + k2 t^2) over lo <= |s_ind| <= hi.
bool fit_window(const TracedCurve& c, std::size_t end, int ind, double lo, double hi, PowerFit& f) {
  std::vector<double> L, Y, tt;
  bool axis = true;
  double sgn_d = 0.0, sgn_i = 0.0;
  for (std::size_t i = 0; i < end; ++i) {
    double si = c.s[i][ind], sd = c.s[i][1 - ind];
    if (std::fabs(si) < lo || std::fabs(si) > hi) continue;
    if (std::fabs(sd) > 1e-12 * std::fabs(si)) axis = false;
    L.push_back(std::log(std::fabs(si)));
    Y.push_back(sd == 0.0 ? -800.0 : std::log(std::fabs(sd)));
    tt.push_back(c.t[i].empty() ? 0.0 : c.t[i][0]);
    sgn_i = si > 0 ? 1 : -1;
    if (sd != 0.0) sgn_d = sd > 0 ? 1 : -1;
  }
  if (L.size() < 6) return false;
  f = PowerFit{};
  f.independent = ind + 1;
  f.rays = 1;
  f.sides = {static_cast<int>(sgn_i)};
  if (axis) {
    f.axis = true;
    return true;
  }
  const int n = static_cast<int>(L.size());
  Eigen::MatrixXd X(n, 4);
  Eigen::VectorXd y(n);
  for (int i = 0; i < n; ++i) {
    X.row(i) << 1.0, L[i], tt[i], tt[i] * tt[i];
    y[i] = Y[i];
  }
  Eigen::VectorXd b = X.completeOrthogonalDecomposition().solve(y);
  f.exponent = b[1];
  f.exponent_round = 0.5 * std::round(2.0 * b[1]);
  Eigen::MatrixXd X2(n, 3);
  Eigen::VectorXd y2(n);
  for (int i = 0; i < n; ++i) {
    X2.row(i) << 1.0, tt[i], tt[i] * tt[i];
    y2[i] = Y[i] - f.exponent_round * L[i];
  }
  Eigen::VectorXd b2 = X2.completeOrthogonalDecomposition().solve(y2);
  double mag = std::exp(b2[0]);
  const bool odd = std::fmod(std::fabs(f.exponent_round), 2.0) == 1.0;
  f.coefficient = sgn_d * (odd ? sgn_i : 1.0) * mag;
  for (int i = 0; i < n; ++i) {
    double actual = std::exp(Y[i]);
    double model = std::exp(X2.row(i).dot(b2) + f.exponent_round * L[i]);
    double lead = mag * std::exp(f.exponent_round * L[i]);
    f.residual = std::max(f.residual, std::fabs(model - actual) / actual);
    f.leading_residual = std::max(f.leading_residual, std::fabs(lead - actual) / actual);
  }
  return true;
}

PowerFit fit_ray(const TracedCurve& c, const TraceConfig& cfg, bool& ok) {
  PowerFit f;
  ok = false;
  // Germ part: from the origin while |s| grows, inside the fitting box.
  auto norm = [&](std::size_t i) { return std::max(std::fabs(c.s[i][0]), std::fabs(c.s[i][1])); };
  std::size_t end = 0;
  double peak = 0.0;
  while (end < c.s.size() && norm(end) <= cfg.fit_hi && norm(end) >= peak) {
    peak = norm(end);
    ++end;
  }
  if (end == 0 || peak <= 0) return f;
  int ind = std::fabs(c.s[end - 1][0]) >= std::fabs(c.s[end - 1][1]) ? 0 : 1;
  // Shrink the window towards the origin while the corrected model misfits.
  double hi = std::min(cfg.fit_hi, peak);
  double lo = std::min(cfg.fit_lo, hi / 10);
  PowerFit best;
  bool any = false;
  while (lo >= 1e-6) {
    PowerFit g;
    if (fit_window(c, end, ind, lo, hi, g)) {
      if (!any || g.residual < best.residual) best = g;
      any = true;
      if (g.axis || g.residual <= 1e-3) break;
    }
    hi /= 4;
    lo /= 4;
  }
  ok = any;
  return any ? best : f;
}

std::vector<PowerFit> group_fits(std::vector<PowerFit> rays) {
  std::sort(rays.begin(), rays.end(), [](const PowerFit& a, const PowerFit& b) {
    if (a.axis != b.axis) return a.axis;
    if (a.independent != b.independent) return a.independent < b.independent;
    if (a.exponent_round != b.exponent_round) return a.exponent_round < b.exponent_round;
    return a.coefficient < b.coefficient;
  });
  std::vector<PowerFit> out;
  for (const auto& r : rays) {
    if (!out.empty()) {
      PowerFit& g = out.back();
      bool same = g.axis == r.axis && g.independent == r.independent &&
                  (r.axis || (g.exponent_round == r.exponent_round &&
                              std::fabs(g.coefficient - r.coefficient) <=
                                  0.05 * std::max(std::fabs(g.coefficient), std::fabs(r.coefficient))));
      if (same) {
        double w = static_cast<double>(g.rays);
        g.exponent = (g.exponent * w + r.exponent) / (w + 1);
        g.coefficient = (g.coefficient * w + r.coefficient) / (w + 1);
        g.residual = std::max(g.residual, r.residual);
        g.leading_residual = std::max(g.leading_residual, r.leading_residual);
        g.rays += 1;
        g.sides.insert(g.sides.end(), r.sides.begin(), r.sides.end());
        continue;
      }
    }
    out.push_back(r);
  }
  return out;
}

}  // namespace

StratumTrace trace_stratum(const ParamFamily& f, const StratumId& id, const TraceConfig& cfg) {
  Tracer tr(f, id, cfg);
  StratumTrace out;
  out.stratum = id;

  if (f.arity == 1) {
    auto box = tr.t_box();
    box.push_back(Interval(-cfg.box, cfg.box));
    for (const auto& r : solve_subdivision(tr.sys, box, tr.sub_cfg()).roots) {
      if (!tr.valid(r)) continue;
      out.points.push_back({r[tr.nt()], tr.t_of(r)});
      out.max_residual = std::max(out.max_residual, tr.residual(r));
    }
    std::sort(out.points.begin(), out.points.end(),
              [](const StratumPoint& a, const StratumPoint& b) { return a.s < b.s; });
    out.points.erase(std::unique(out.points.begin(), out.points.end(),
                                 [](const StratumPoint& a, const StratumPoint& b) {
                                   if (std::fabs(a.s - b.s) > 1e-8) return false;
                                   for (std::size_t i = 0; i < a.t.size(); ++i)
                                     if (std::fabs(a.t[i] - b.t[i]) > 1e-8) return false;
                                   return true;
                                 }),
                     out.points.end());
    return out;
  }
  if (f.arity != 2) throw std::invalid_argument("families have one or two parameters");

  std::vector<std::array<std::array<double, 2>, 2>> segments;
  auto square = [&](double r) {
    segments.push_back({{{-r, -r}, {2 * r, 0}}});
    segments.push_back({{{r, -r}, {0, 2 * r}}});
    segments.push_back({{{-r, r}, {2 * r, 0}}});
    segments.push_back({{{-r, -r}, {0, 2 * r}}});
  };
  square(cfg.ring);
  if (cfg.boundary_seeds) square(cfg.box);

  std::vector<std::vector<Eigen::VectorXd>> paths;
  for (const auto& seg : segments) {
    for (const auto& x0 : tr.segment_seeds(seg[0], seg[1])) {
      if (tr.on_known(x0, paths)) continue;
      bool origin = false;
      auto pts = tr.trace_from(x0, origin);
      TracedCurve c;
      c.through_origin = origin;
      for (const auto& p : pts) {
        c.s.push_back(tr.s_of(p));
        c.t.push_back(tr.t_of(p));
        if (p.lpNorm<Eigen::Infinity>() > 0) out.max_residual = std::max(out.max_residual, tr.residual(p));
      }
      paths.push_back(std::move(pts));
      out.curves.push_back(std::move(c));
    }
  }

  std::vector<PowerFit> rays;
  for (const auto& c : out.curves) {
    if (!c.through_origin) continue;
    bool ok = false;
    PowerFit r = fit_ray(c, cfg, ok);
    if (ok) rays.push_back(r);
  }
  out.fits = group_fits(std::move(rays));
  return out;
}

std::vector<StratumTrace> trace_all(const ParamFamily& f, const TraceConfig& cfg) {
  std::vector<StratumTrace> out;
  for (const auto& id : boundary_strata()) out.push_back(trace_stratum(f, id, cfg));
  return out;
}

namespace {

// Quartic factor of a quintic carrying its four smallest roots: the large
// root is polished by Newton and divided out. Ascending coefficients.
std::optional<Poly> small_quartic(const Poly& p) {
  Poly q = poly_trim(p);
  if (poly_degree(q) != 5) return std::nullopt;
  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(5, 5);
  for (int i = 1; i < 5; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < 5; ++i) comp(i, 4) = -q[i] / q[5];
  Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
  std::complex<double> big = 0.0;
  for (int i = 0; i < 5; ++i)
    if (std::abs(es.eigenvalues()[i]) > std::abs(big)) big = es.eigenvalues()[i];
  if (std::fabs(big.imag()) > 1e-9 * std::abs(big)) return std::nullopt;
  double r = big.real();
  Poly dq = poly_derivative(q);
  for (int it = 0; it < 20; ++it) {
    double step = poly_eval(q, r) / poly_eval(dq, r);
    r -= step;
    if (std::fabs(step) <= 1e-16 * std::fabs(r)) break;
  }
  // Deflating a large root is stable from the constant term upwards.
  Poly out(5, 0.0);
  out[0] = -q[0] / r;
  for (int i = 1; i < 4; ++i) out[i] = (out[i - 1] - q[i]) / r;
  for (int i = 0; i < 4; ++i) out[i] /= q[5];
  out[4] = 1.0;
  return out;
}

std::array<std::complex<double>, 4> quartic_roots(const Poly& a) {
  Eigen::Matrix4d comp = Eigen::Matrix4d::Zero();
  for (int i = 1; i < 4; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < 4; ++i) comp(i, 3) = -a[i];
  Eigen::EigenSolver<Eigen::Matrix4d> es(comp, false);
  return {es.eigenvalues()[0], es.eigenvalues()[1], es.eigenvalues()[2], es.eigenvalues()[3]};
}

// Depressed quartic u^4 + a2 u^2 + a1 u + a0 through the centred roots,
// which avoids the cancellation of the shift on widely spread roots.
double quartic_discriminant(const Poly& a) {
  auto r = quartic_roots(a);
  std::complex<double> mean = 0.25 * (r[0] + r[1] + r[2] + r[3]);
  for (auto& v : r) v -= mean;
  std::complex<double> e2 = 0, e3 = 0, e4 = r[0] * r[1] * r[2] * r[3];
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      e2 += r[i] * r[j];
      for (int k = j + 1; k < 4; ++k) e3 += r[i] * r[j] * r[k];
    }
  double a2 = e2.real(), a1 = -e3.real(), a0 = e4.real();
  return 16 * a0 * std::pow(a2, 4) - 4 * a1 * a1 * std::pow(a2, 3) - 128 * a0 * a0 * a2 * a2 +
         144 * a0 * a1 * a1 * a2 - 27 * std::pow(a1, 4) + 256 * a0 * a0 * a0;
}

}  // namespace

std::vector<std::vector<ResultantPoint>> lc_vertex2_resultant(const ParamFamily& f, double s2_lo,
                                                              double s2_hi, double ds2) {
  if (f.arity != 2) throw std::invalid_argument("resultant route needs a two-parameter family");
  auto R = [&](double s1, double s2) {
    auto q = small_quartic(vertex_poly(f.at(s1, s2)));
    return q ? quartic_discriminant(*q) : NAN;
  };
  // The discriminant also vanishes where the colliding roots sit at a
  // singular point (cusp line) or a lightlike inflection; drop those.
  auto spurious = [&](double s1, double s2) {
    PolyCurve c = f.at(s1, s2);
    auto q = small_quartic(vertex_poly(c));
    if (!q) return true;
    auto r = quartic_roots(*q);
    double best = INFINITY, tc = 0.0;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j)
        if (std::abs(r[i] - r[j]) < best) {
          best = std::abs(r[i] - r[j]);
          tc = 0.5 * (r[i] + r[j]).real();
        }
    Vec2 d = c.d1(tc);
    double n2 = euclid_norm2(d);
    if (std::sqrt(n2) <= 1e-3 * std::fabs(s2)) return true;
    return std::fabs(minkowski_dot(d, d)) <= 1e-5 * n2;
  };
  std::vector<std::vector<ResultantPoint>> branches(4);
  int steps = static_cast<int>(std::lround((s2_hi - s2_lo) / ds2));
  for (int sg : {-1, 1}) {
    for (int i = 0; i <= steps; ++i) {
      double s2 = sg * (s2_lo + (s2_hi - s2_lo) * i / steps);
      double k = s2 * s2;
      std::vector<double> roots;
      const int N = 400;
      double mu0 = -0.2, mu1 = 0.6;
      double prev = R(mu0 * k, s2);
      for (int j = 1; j <= N; ++j) {
        double mu = mu0 + (mu1 - mu0) * j / N;
        double cur = R(mu * k, s2);
        if (std::isfinite(prev) && std::isfinite(cur) && (prev < 0) != (cur < 0)) {
          double lo = (mu - (mu1 - mu0) / N) * k, hi = mu * k, flo = prev;
          for (int it = 0; it < 200 && hi - lo > 1e-17; ++it) {
            double m = 0.5 * (lo + hi);
            double fm = R(m, s2);
            if ((fm < 0) == (flo < 0)) {
              lo = m;
              flo = fm;
            } else {
              hi = m;
            }
          }
          double s1 = 0.5 * (lo + hi);
          if (!spurious(s1, s2)) roots.push_back(s1);
        }
        prev = cur;
      }
      std::sort(roots.begin(), roots.end());
      for (std::size_t b = 0; b < roots.size() && b < 2; ++b)
        branches[(sg > 0 ? 2 : 0) + b].push_back({roots[b], s2});
    }
  }
  branches.erase(std::remove_if(branches.begin(), branches.end(),
                                [](const auto& b) { return b.empty(); }),
                 branches.end());
  return branches;
}

namespace {

double seg_dist2(std::array<double, 2> p, std::array<double, 2> a, std::array<double, 2> b) {
  double dx = b[0] - a[0], dy = b[1] - a[1];
  double l2 = dx * dx + dy * dy;
  double u = l2 > 0 ? std::clamp(((p[0] - a[0]) * dx + (p[1] - a[1]) * dy) / l2, 0.0, 1.0) : 0.0;
  double ex = a[0] + u * dx - p[0], ey = a[1] + u * dy - p[1];
  return std::sqrt(ex * ex + ey * ey);
}

using Polyline = std::vector<std::array<double, 2>>;

double dist_to_lines(std::array<double, 2> p, const std::vector<Polyline>& ls) {
  double d = INFINITY;
  for (const auto& l : ls) {
    if (l.size() == 1) d = std::min(d, std::hypot(p[0] - l[0][0], p[1] - l[0][1]));
    for (std::size_t i = 0; i + 1 < l.size(); ++i) d = std::min(d, seg_dist2(p, l[i], l[i + 1]));
  }
  return d;
}

}  // namespace

double hausdorff_resultant_vs_trace(const std::vector<std::vector<ResultantPoint>>& res,
                                    const StratumTrace& trace, double s2_lo, double s2_hi) {
  auto in = [&](double s2) { return std::fabs(s2) >= s2_lo && std::fabs(s2) <= s2_hi; };
  std::vector<Polyline> A, B;
  for (const auto& br : res) {
    Polyline l;
    for (const auto& p : br) l.push_back({p.s1, p.s2});
    A.push_back(l);
  }
  for (const auto& c : trace.curves) {
    if (!c.through_origin) continue;
    B.push_back(c.s);
  }
  double h = 0.0;
  for (const auto& l : A)
    for (const auto& p : l) h = std::max(h, dist_to_lines(p, B));
  for (const auto& l : B)
    for (const auto& p : l)
      if (in(p[1])) h = std::max(h, dist_to_lines(p, A));
  return h;
}

SweepResult census_sweep(const ParamFamily& f, double lo, double hi, int n,
                         const DetectConfig& dcfg) {
  SweepResult out;
  out.n1 = n;
  out.n2 = f.arity == 2 ? n : 1;
  auto coord = [&](int i) {
    double u = static_cast<double>(i) / (n - 1);
    return lo * (1.0 - u) + hi * u;
  };
  for (int j = 0; j < out.n2; ++j)
    for (int i = 0; i < out.n1; ++i) {
      SweepCell c;
      c.s1 = coord(i);
      c.s2 = f.arity == 2 ? coord(j) : 0.0;
      c.features = analyze_curve(f.at(c.s1, c.s2), f.window_lo, f.window_hi, dcfg).features;
      out.cells.push_back(c);
    }
  // Connected components of equal strings.
  std::vector<int> parent(out.cells.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int a) { return parent[a] == a ? a : parent[a] = find(parent[a]); };
  auto unite = [&](int a, int b) {
    if (out.cells[a].features == out.cells[b].features) parent[find(a)] = find(b);
  };
  for (int j = 0; j < out.n2; ++j)
    for (int i = 0; i < out.n1; ++i) {
      int k = j * out.n1 + i;
      if (i + 1 < out.n1) unite(k, k + 1);
      if (j + 1 < out.n2) unite(k, k + out.n1);
    }
  std::map<int, int> label;
  for (std::size_t k = 0; k < out.cells.size(); ++k) {
    int r = find(static_cast<int>(k));
    auto it = label.find(r);
    if (it == label.end()) it = label.emplace(r, static_cast<int>(label.size())).first;
    out.cells[k].region = it->second;
  }
  out.regions = static_cast<int>(label.size());
  return out;
}

namespace {

bool segments_cross(std::array<double, 2> p, std::array<double, 2> q, std::array<double, 2> a,
                    std::array<double, 2> b) {
  auto orient = [](std::array<double, 2> u, std::array<double, 2> v, std::array<double, 2> w) {
    double d = (v[0] - u[0]) * (w[1] - u[1]) - (v[1] - u[1]) * (w[0] - u[0]);
    return (d > 0) - (d < 0);
  };
  int o1 = orient(p, q, a), o2 = orient(p, q, b), o3 = orient(a, b, p), o4 = orient(a, b, q);
  return o1 != o2 && o3 != o4;
}

}  // namespace

RegionReport region_check(const ParamFamily& f, const SweepResult& sweep,
                          const std::vector<StratumTrace>& traces, double tol) {
  RegionReport rep;
  auto crossed = [&](const SweepCell& A, const SweepCell& B) {
    if (f.arity == 1) {
      double lo = std::min(A.s1, B.s1) - tol, hi = std::max(A.s1, B.s1) + tol;
      for (const auto& tr : traces)
        for (const auto& p : tr.points)
          if (p.s >= lo && p.s <= hi) return true;
      return false;
    }
    std::array<double, 2> a{A.s1, A.s2}, b{B.s1, B.s2};
    const bool horizontal = A.s2 == B.s2;
    for (const auto& tr : traces) {
      std::optional<PolySystem> line;
      for (const auto& c : tr.curves) {
        if (c.s.size() == 1 && (seg_dist2(c.s[0], a, b) <= tol)) return true;
        for (std::size_t i = 0; i + 1 < c.s.size(); ++i) {
          const auto &p = c.s[i], &q = c.s[i + 1];
          if (segments_cross(a, b, p, q)) return true;
          double d = std::min({seg_dist2(p, a, b), seg_dist2(q, a, b), seg_dist2(a, p, q),
                               seg_dist2(b, p, q)});
          if (d <= tol) return true;
          // A chord may miss a grid segment the curve itself touches; settle
          // near misses on the stratum restricted to the grid line.
          double len = std::hypot(q[0] - p[0], q[1] - p[1]);
          if (d > 0.05 * len + 1e-7 || c.t[i].empty()) continue;
          const int nt = static_cast<int>(c.t[i].size());
          if (!line) {
            StratumSystem ss = stratum_system(f, tr.stratum);
            ss.eqs.push_back(MPoly::var(nt + (horizontal ? 1 : 0)) - (horizontal ? A.s2 : A.s1));
            line.emplace(ss.eqs, ss.nvars());
          }
          Eigen::VectorXd x(nt + 2);
          for (int k = 0; k < nt; ++k) x[k] = c.t[i][k];
          x[nt] = p[0];
          x[nt + 1] = p[1];
          auto r = newton(*line, x);
          if (r && seg_dist2({(*r)[nt], (*r)[nt + 1]}, a, b) <= tol) return true;
        }
      }
    }
    return false;
  };
  auto visit = [&](const SweepCell& A, const SweepCell& B) {
    ++rep.checked_pairs;
    if (A.features == B.features) return;
    ++rep.changing_pairs;
    if (!crossed(A, B))
      rep.violations.push_back({{A.s1, A.s2}, {B.s1, B.s2}, A.features, B.features});
  };
  for (int j = 0; j < sweep.n2; ++j)
    for (int i = 0; i < sweep.n1; ++i) {
      if (i + 1 < sweep.n1) visit(sweep.cell(i, j), sweep.cell(i + 1, j));
      if (j + 1 < sweep.n2) visit(sweep.cell(i, j), sweep.cell(i, j + 1));
    }
  return rep;
}

std::vector<Analysis> swallowtail_census(const ParamFamily& f, const std::vector<double>& s) {
  if (f.singularity != "V2") throw std::invalid_argument("swallowtail census needs the V2 family");
  std::vector<Analysis> out;
  for (double v : s) out.push_back(analyze_curve(f.at(v), f.window_lo, f.window_hi));
  return out;
}

}  // namespace mink
