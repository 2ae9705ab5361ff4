#include "minkcurve/caustic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mink {

namespace {

double dot_e(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
double norm_e(Vec2 a) { return std::sqrt(euclid_norm2(a)); }

double max_abs(const Jet<double>& j) {
  double m = 0.0;
  for (double v : j.c) m = std::max(m, std::fabs(v));
  return m;
}

// Drops m leading coefficients; the result has order k - m.
Jet<double> shift_down(const Jet<double>& j, int m) {
  std::vector<double> c(j.c.begin() + m, j.c.end());
  return Jet<double>(std::move(c));
}

}  // namespace

Vec2 evolute(const PolyCurve& c, double t) {
  Vec2 d1 = c.d1(t), d2 = c.d2(t);
  double n2 = euclid_norm2(d1);
  if (n2 == 0.0) throw std::domain_error("evolute at a singular point; use caustic()");
  double q = minkowski_dot(d1, d1);
  if (std::fabs(q) <= kLightlikeTol * n2)
    throw std::domain_error("evolute at a lightlike point; use caustic()");
  double w = minkowski_dot(d2, perp(d1));
  double kappa = w / std::pow(std::fabs(q), 1.5);
  if (std::fabs(w) <= 1e-14 * std::sqrt(n2) * norm_e(d2) || kappa == 0.0)
    throw std::domain_error("evolute at an inflection; use caustic()");
  double sign = q < 0 ? 1.0 : -1.0;
  Vec2 n = (sign / std::sqrt(std::fabs(q))) * perp(d1);
  return c.point(t) - (1.0 / kappa) * n;
}

double caustic_lambda(const PolyCurve& c, double t) {
  Vec2 d1 = c.d1(t), d2 = c.d2(t);
  double w = minkowski_dot(perp(d1), d2);
  if (w == 0.0) throw SingularDenominator("caustic parameter at a zero of the curvature numerator");
  return -minkowski_dot(d1, d1) / w;
}

Vec2 caustic_point(const PolyCurve& c, double t) {
  return c.point(t) - caustic_lambda(c, t) * perp(c.d1(t));
}

std::pair<double, double> bif_residual(const PolyCurve& c, double t, Vec2 u) {
  Vec2 r = c.point(t) - u, d1 = c.d1(t), d2 = c.d2(t);
  double dd1 = 2 * minkowski_dot(d1, r);
  double dd2 = 2 * minkowski_dot(d2, r) + 2 * minkowski_dot(d1, d1);
  double s1 = 2 * norm_e(d1) * norm_e(r);
  double s2 = 2 * (norm_e(d2) * norm_e(r) + euclid_norm2(d1));
  return {s1 > 0 ? dd1 / s1 : dd1, s2 > 0 ? dd2 / s2 : dd2};
}

std::pair<Jet<double>, Jet<double>> caustic_series(const PolyCurve& c, double t0, int k) {
  const int pad = 6;
  int K = k + pad;
  auto [x, y] = curve_jets(c, t0, K + 1);
  Jet<double> x1 = x.derivative(), y1 = y.derivative();
  Jet<double> x2 = x1.derivative(), y2 = y1.derivative();
  x1 = x1.truncated(K - 1);
  y1 = y1.truncated(K - 1);
  Jet<double> num = x1 * x1 - y1 * y1;  // -<gamma',gamma'>
  Jet<double> den = x1 * y2 - x2 * y1;
  double scale = std::max(max_abs(num), max_abs(den));
  double tol = 1e-12 * std::max(scale, 1e-300);
  int m = 0;
  while (m <= pad && std::fabs(den[m]) <= tol) ++m;
  if (m > pad) throw SingularDenominator("curvature numerator vanishes to high order");
  for (int i = 0; i < m; ++i)
    if (std::fabs(num[i]) > tol)
      throw SingularDenominator("caustic branch has a pole at this parameter");
  Jet<double> lam = (shift_down(num, m) / shift_down(den, m)).truncated(k);
  Jet<double> u1 = x.truncated(k) - lam * y1.truncated(k);
  Jet<double> u2 = y.truncated(k) - lam * x1.truncated(k);
  return {u1, u2};
}

std::vector<CausticBranch> caustic(const PolyCurve& c, double a, double b,
                                   const CausticConfig& cfg) {
  if (!(a < b)) throw std::invalid_argument("caustic interval must satisfy a < b");
  Census census = find_special_points(c, a, b, cfg.detect);

  // Poles of lambda split the parameter interval; removable points get a
  // series value instead of a direct sample.
  std::vector<double> poles, removable, lightlike;
  std::vector<double> cusps;
  for (const auto& p : census.points) {
    switch (p.kind) {
      case PointKind::Inflection:
        poles.push_back(p.t);
        break;
      case PointKind::Cusp:
        cusps.push_back(p.t);
        [[fallthrough]];
      case PointKind::LightlikeInflection:
        try {
          caustic_series(c, p.t, 2);
          removable.push_back(p.t);
        } catch (const SingularDenominator&) {
          poles.push_back(p.t);
        }
        break;
      case PointKind::Lightlike:
        lightlike.push_back(p.t);
        break;
      default:
        break;
    }
  }
  std::sort(poles.begin(), poles.end());

  auto in_box = [&](Vec2 p) { return std::max(std::fabs(p.x), std::fabs(p.y)) <= cfg.box; };
  auto near = [&](double t, const std::vector<double>& ts) {
    for (double s : ts)
      if (std::fabs(t - s) < cfg.gap) return true;
    return false;
  };
  auto sample = [&](double t) -> CausticSample {
    Vec2 p;
    try {
      p = caustic_point(c, t);
    } catch (const SingularDenominator&) {
      auto [u1, u2] = caustic_series(c, t, 2);
      p = {u1[0], u2[0]};
    }
    return {t, p, !in_box(p)};
  };

  std::vector<CausticBranch> out;
  std::vector<double> edges{a};
  edges.insert(edges.end(), poles.begin(), poles.end());
  edges.push_back(b);
  for (std::size_t e = 0; e + 1 < edges.size(); ++e) {
    double lo = edges[e], hi = edges[e + 1];
    if (e > 0) lo += cfg.gap;
    if (e + 2 < edges.size()) hi -= cfg.gap;
    if (!(lo < hi)) continue;
    int n = std::max(2, static_cast<int>(std::ceil(cfg.initial_samples * (hi - lo) / (b - a))));
    std::vector<double> ts;
    for (int i = 0; i <= n; ++i) {
      double t = lo + (hi - lo) * i / n;
      if (near(t, removable)) continue;
      ts.push_back(t);
    }
    for (double r : removable)
      if (r > lo && r < hi) ts.push_back(r);
    std::sort(ts.begin(), ts.end());

    CausticBranch br;
    std::vector<CausticSample> s;
    for (double t : ts) {
      if (near(t, removable) && std::find(removable.begin(), removable.end(), t) == removable.end())
        continue;
      s.push_back(sample(t));
    }
    // Refine where consecutive in-box samples are far apart.
    for (int pass = 0; pass < cfg.max_refine; ++pass) {
      std::vector<CausticSample> next;
      bool changed = false;
      for (std::size_t i = 0; i < s.size(); ++i) {
        next.push_back(s[i]);
        if (i + 1 == s.size()) break;
        const auto &p = s[i], &q = s[i + 1];
        if (p.asymptotic && q.asymptotic) continue;
        if (norm_e(p.p - q.p) <= cfg.max_step) continue;
        double tm = 0.5 * (p.t + q.t);
        if (near(tm, removable) || near(tm, poles)) continue;
        next.push_back(sample(tm));
        changed = true;
      }
      s.swap(next);
      if (!changed) break;
    }
    br.samples = std::move(s);
    br.t0 = lo;
    for (double t : removable)
      if (t >= lo - cfg.gap && t <= hi + cfg.gap) {
        auto [u1, u2] = caustic_series(c, t);
        br.series.push_back({t, u1, u2});
      }
    for (double t : lightlike)
      if (t >= lo && t <= hi) {
        auto [u1, u2] = caustic_series(c, t);
        br.series.push_back({t, u1, u2});
      }
    std::sort(br.series.begin(), br.series.end(),
              [](const SeriesAt& p, const SeriesAt& q) { return p.t0 < q.t0; });
    out.push_back(std::move(br));
  }

  for (double t : cusps) {
    CausticBranch line;
    line.kind = BranchKind::Line;
    line.t0 = t;
    line.point = c.point(t);
    Vec2 d = perp(c.d2(t));
    double n = norm_e(d);
    if (n == 0.0) throw std::domain_error("unsupported singular point: second derivative vanishes");
    line.direction = (1.0 / n) * d;
    out.push_back(line);
  }
  return out;
}

AsymptoteEstimate asymptote_model_check(const PolyCurve& c, double t0, int n, double h,
                                        int levels) {
  Vec2 g0 = c.point(t0), d1 = c.d1(t0);
  double len = norm_e(d1);
  if (len == 0.0) throw std::domain_error("asymptote check at a singular point");
  Vec2 T = (1.0 / len) * d1;
  Vec2 N{-T.y, T.x};
  AsymptoteEstimate est;
  for (int j = 0; j <= levels; ++j) {
    double t = t0 + h * std::ldexp(1.0, -j);
    Vec2 e = evolute(c, t) - g0;
    double X = dot_e(e, T), Y = dot_e(e, N);
    est.raw.push_back(std::pow(X, n) * Y);
  }
  for (std::size_t j = 0; j + 1 < est.raw.size(); ++j)
    est.richardson.push_back(2 * est.raw[j + 1] - est.raw[j]);
  est.limit = est.richardson.back();
  double prev = est.richardson[est.richardson.size() - 2];
  double mag = 0.0;
  for (double v : est.raw) mag = std::max(mag, std::fabs(v));
  if (!std::isfinite(est.limit) || std::fabs(est.limit) <= 1e-10 * std::max(mag, 1.0))
    throw ModelMismatch("evolute product x^n y tends to zero or diverges");
  if (std::fabs(est.limit - prev) > 1e-3 * std::fabs(est.limit))
    throw ModelMismatch("evolute product x^n y does not settle");
  return est;
}

SideReport side_checks(const PolyCurve& c, double t0, double dt) {
  SideReport rep;
  Vec2 g0 = c.point(t0), d1 = c.d1(t0);
  Vec2 nrm = perp(d1);
  rep.lightlike = causal_character(d1).type == Causal::Lightlike;
  auto h = [&](Vec2 p) { return minkowski_dot(p - g0, nrm); };
  for (double s : {-dt, dt}) rep.curve_values.push_back(h(c.point(t0 + s)));
  if (rep.lightlike) {
    for (double s : {-dt, dt}) rep.focal_values.push_back(h(caustic_point(c, t0 + s)));
  } else {
    for (double s : {-dt, 0.0, dt}) rep.focal_values.push_back(h(evolute(c, t0 + s)));
  }
  auto common_sign = [](const std::vector<double>& v) {
    bool pos = std::all_of(v.begin(), v.end(), [](double x) { return x > 0; });
    bool neg = std::all_of(v.begin(), v.end(), [](double x) { return x < 0; });
    return pos ? 1.0 : neg ? -1.0 : 0.0;
  };
  rep.curve_side = common_sign(rep.curve_values);
  rep.focal_side = common_sign(rep.focal_values);
  rep.opposite = rep.curve_side * rep.focal_side < 0;
  return rep;
}

int lightlike_caustic_contact(const PolyCurve& c, double t0) {
  const int k = 6;
  auto [u1, u2] = caustic_series(c, t0, k);
  auto [x, y] = curve_jets(c, t0, k);
  Vec2 d1{x[1], y[1]};
  double len = norm_e(d1);
  if (len == 0.0) throw std::domain_error("contact check at a singular point");
  double scale = std::max(1.0, norm_e({x[0], y[0]}));
  if (norm_e({u1[0] - x[0], u2[0] - y[0]}) > 1e-9 * scale) return 0;
  Vec2 T = (1.0 / len) * d1;
  // Heights over the common tangent line, written as graphs over it.
  auto graph = [&](const Jet<double>& px, const Jet<double>& py) -> std::optional<Jet<double>> {
    Jet<double> sx = px - x[0], sy = py - y[0];
    Jet<double> sigma = sx * T.x + sy * T.y;
    Jet<double> eta = sy * T.x - sx * T.y;
    if (std::fabs(sigma[1]) <= 1e-12 * len) return std::nullopt;
    return compose(eta, jet_revert(sigma));
  };
  auto hc = graph(x, y);
  auto hu = graph(u1, u2);
  if (!hc || !hu) return 0;
  Jet<double> diff = *hc - *hu;
  double mag = std::max(max_abs(*hc), max_abs(*hu));
  if (std::fabs((*hu)[1]) > 1e-9 * std::max(mag, 1.0)) return 0;
  for (int i = 1; i <= k; ++i)
    if (std::fabs(diff[i]) > 1e-9 * std::max(mag, 1.0)) return i;
  return k + 1;
}

}  // namespace mink
