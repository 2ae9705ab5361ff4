#include "minkcurve/acceptance.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <future>
#include <map>
#include <mutex>
#include <random>
#include <sstream>

#include "minkcurve/caustic.hpp"
#include "minkcurve/exact.hpp"

namespace mink {

namespace {

std::string f6(double v) {
  char b[48];
  std::snprintf(b, sizeof b, "%.6g", v);
  return b;
}

bool rel_close(double v, double target, double rel) {
  return std::fabs(v - target) <= rel * std::fabs(target);
}

// Traces are shared between the stratification and region criteria.
class TraceCache {
 public:
  const std::vector<StratumTrace>& get(const std::string& fam, const TraceConfig& cfg) {
    std::shared_future<std::vector<StratumTrace>> fut;
    {
      std::lock_guard<std::mutex> lk(mu_);
      auto it = cache_.find(fam);
      if (it == cache_.end()) {
        fut = std::async(std::launch::deferred, [fam, cfg] { return trace_all(model_family(fam), cfg); })
                  .share();
        cache_.emplace(fam, fut);
      } else {
        fut = it->second;
      }
    }
    return fut.get();
  }

 private:
  std::mutex mu_;
  std::map<std::string, std::shared_future<std::vector<StratumTrace>>> cache_;
};

const StratumTrace* find_trace(const std::vector<StratumTrace>& ts, const std::string& name) {
  for (const auto& t : ts)
    if (t.stratum.name() == name) return &t;
  return nullptr;
}

std::vector<const PowerFit*> curved_fits(const std::vector<StratumTrace>& ts,
                                         const std::vector<std::string>& names) {
  std::vector<const PowerFit*> out;
  for (const auto& n : names)
    if (const auto* t = find_trace(ts, n))
      for (const auto& f : t->fits)
        if (!f.axis) out.push_back(&f);
  return out;
}

std::string fit_str(const PowerFit& f) {
  return "e=" + f6(f.exponent) + " c=" + f6(f.coefficient) + " res=" + f6(f.residual);
}

struct Check {
  CriterionResult* r;
  void operator()(bool ok, const std::string& what) {
    r->details.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
    if (!ok) r->pass = false;
  }
};

// ---------------------------------------------------------------------------

void crit_li_subset(const AcceptanceConfig& cfg, Check& check) {
  for (const auto& row : verify_li_subset_v(cfg.li_kmax)) {
    check(row.pass(), "k=" + std::to_string(row.k) + " g^(2k)(0)=" + row.g2k.str() +
                          " expected " + row.expected.str() +
                          (row.low_orders_vanish ? "" : " low orders nonzero") +
                          (row.recurrence_agrees ? "" : " recurrence differs"));
  }
}

void crit_i2(const AcceptanceConfig& cfg, Check& check) {
  auto f = model_family("I2");
  for (double s : {-0.01, -0.001, 0.01, 0.001}) {
    auto a = analyze_curve(f.at(s), -0.5, 0.5, cfg.detect);
    std::string want = s < 0 ? "I V- I" : "V+";
    check(a.features == want, "s1=" + f6(s) + " '" + a.features + "' want '" + want + "'");
  }
}

void crit_li(const AcceptanceConfig& cfg, Check& check) {
  auto f = model_family("LI");
  for (double u : {-0.03, 0.03}) {
    auto a = analyze_curve(f.at(u), -0.5, 0.5, cfg.detect);
    std::string want = u < 0 ? "L I L" : "V- I V-";
    check(a.features == want, "u=" + f6(u) + " '" + a.features + "' want '" + want + "'");
    if (u < 0) {
      double r = std::sqrt(-u / 3.0);
      std::vector<double> ll;
      for (const auto& p : a.census.points)
        if (p.kind == PointKind::Lightlike) ll.push_back(p.t);
      bool ok = ll.size() == 2 && std::fabs(ll[0] + r) <= 1e-8 && std::fabs(ll[1] - r) <= 1e-8;
      double err = ll.size() == 2 ? std::max(std::fabs(ll[0] + r), std::fabs(ll[1] - r)) : NAN;
      check(ok, "lightlike at +-sqrt(-u/3), max error " + f6(err));
    }
  }
}

void crit_cusp_family(const AcceptanceConfig& cfg, Check& check) {
  auto f = model_family("C");
  // Local window: the far vertex pair near t = +-1/3 is not part of the germ.
  const double w = 0.25;
  {
    double s = -0.04;
    auto a = analyze_curve(f.at(s), -w, w, cfg.detect);
    const auto& c = a.census;
    const auto& xs = c.self_intersections;
    bool one = xs.size() == 1;
    check(one && std::fabs(xs[0].t1 + 0.2) <= 1e-6 && std::fabs(xs[0].t2 - 0.2) <= 1e-6,
          "s=-0.04 self-intersection at t=+-0.2, found " + std::to_string(xs.size()) +
              (one ? " at " + f6(xs[0].t1) + "," + f6(xs[0].t2) : ""));
    std::vector<double> ll;
    for (const auto& p : c.points)
      if (p.kind == PointKind::Lightlike) ll.push_back(p.t);
    bool near = ll.size() == 2 && rel_close(ll[0], s / 2, 0.1) && rel_close(ll[1], -s / 2, 0.1);
    check(near, "s=-0.04 two lightlike points near -+0.02, features '" + a.features + "'");
    bool between = one && !ll.empty() &&
                   std::all_of(ll.begin(), ll.end(), [&](double t) { return xs[0].t1 < t && t < xs[0].t2; });
    check(between, "s=-0.04 lightlike points between the crossing parameters");
    check(c.count(PointKind::Vertex) == 1 && c.count_vertices(VertexDir::Inward) == 1,
          "s=-0.04 one inward vertex, features '" + a.features + "'");
    check(c.count(PointKind::Inflection) == 0, "s=-0.04 no inflections");
  }
  {
    double s = 0.04;
    auto a = analyze_curve(f.at(s), -w, w, cfg.detect);
    const auto& c = a.census;
    std::string vs;
    for (const auto& p : c.points)
      if (p.kind == PointKind::Vertex) vs += (vs.empty() ? "" : " ") + p.token();
    check(c.count(PointKind::Inflection) == 2, "s=+0.04 two inflections, features '" + a.features + "'");
    check(vs == "V- V+ V-", "s=+0.04 vertex pattern '" + vs + "' want 'V- V+ V-'");
    check(c.count(PointKind::Lightlike) == 2, "s=+0.04 two lightlike points");
    check(c.self_intersections.empty(), "s=+0.04 no self-intersection");
  }
}

// Least squares of v against t^p for p in pows, on samples with |t| <= tmax.
Eigen::VectorXd fit_powers(const std::vector<double>& t, const std::vector<double>& v,
                           const std::vector<int>& pows) {
  Eigen::MatrixXd A(static_cast<Eigen::Index>(t.size()), static_cast<Eigen::Index>(pows.size()));
  Eigen::VectorXd b(static_cast<Eigen::Index>(t.size()));
  for (std::size_t i = 0; i < t.size(); ++i) {
    for (std::size_t j = 0; j < pows.size(); ++j) A(i, j) = std::pow(t[i], pows[j]);
    b(i) = v[i];
  }
  return A.colPivHouseholderQr().solve(b);
}

void crit_caustic_expansions(const AcceptanceConfig& cfg, Check& check) {
  CausticConfig cc;
  cc.detect = cfg.detect;
  auto samples = [](const std::vector<CausticBranch>& br, std::vector<double>& t, std::vector<double>& x,
                    std::vector<double>& y, int& lines, Vec2& lp, Vec2& ld) {
    lines = 0;
    for (const auto& b : br) {
      if (b.kind == BranchKind::Line) {
        ++lines;
        lp = b.point;
        ld = b.direction;
        continue;
      }
      for (const auto& s : b.samples)
        if (!s.asymptotic && std::fabs(s.t) <= 0.05) {
          t.push_back(s.t);
          x.push_back(s.p.x);
          y.push_back(s.p.y);
        }
    }
  };
  {
    PolyCurve c{{0, 0, 1}, {0, 0, 0, 1}, "(t^2,t^3)"};
    std::vector<double> t, x, y;
    int lines;
    Vec2 lp, ld;
    samples(caustic(c, -0.5, 0.5, cc), t, x, y, lines, lp, ld);
    bool line_ok = lines == 1 && std::fabs(lp.x) <= 1e-12 && std::fabs(ld.x) <= 1e-12 * std::fabs(ld.y);
    check(line_ok, "(t^2,t^3) line component x=0");
    check(t.size() >= 10, "(t^2,t^3) " + std::to_string(t.size()) + " branch samples with |t|<=0.05");
    if (t.size() >= 10) {
      auto cx = fit_powers(t, x, {2, 3, 4, 5});
      auto cy = fit_powers(t, y, {1, 2, 3, 4, 5});
      check(rel_close(cx(0), -1.0, 0.02), "(t^2,t^3) branch x ~ " + f6(cx(0)) + " t^2, want -1");
      check(rel_close(cy(0), -4.0 / 3.0, 0.02), "(t^2,t^3) branch y ~ " + f6(cy(0)) + " t, want -4/3");
    }
  }
  {
    PolyCurve c{{0, 0, 1}, {0, 0, 1, 1}, "(t^2,t^2+t^3)"};
    std::vector<double> t, x, y;
    int lines;
    Vec2 lp, ld;
    samples(caustic(c, -0.5, 0.5, cc), t, x, y, lines, lp, ld);
    double n = std::hypot(ld.x, ld.y);
    bool line_ok = lines == 1 && n > 0 && std::fabs(ld.x - ld.y) <= 1e-12 * n &&
                   std::fabs(lp.x - lp.y) <= 1e-12;
    check(line_ok, "(t^2,t^2+t^3) line component y=x");
    check(t.size() >= 10, "(t^2,t^2+t^3) " + std::to_string(t.size()) + " branch samples with |t|<=0.05");
    if (t.size() >= 10) {
      auto cx = fit_powers(t, x, {2, 3, 4, 5, 6});
      auto cy = fit_powers(t, y, {2, 3, 4, 5, 6});
      check(rel_close(cx(0), 5.0, 0.05) && rel_close(cy(0), 5.0, 0.05),
            "(t^2,t^2+t^3) quadratic terms " + f6(cx(0)) + ", " + f6(cy(0)) + " want 5, 5");
      check(rel_close(cx(1), 9.0, 0.05) && rel_close(cy(1), 4.0, 0.05),
            "(t^2,t^2+t^3) cubic terms " + f6(cx(1)) + ", " + f6(cy(1)) + " want 9, 4");
    }
  }
}

void crit_asymptotes(const AcceptanceConfig&, Check& check) {
  struct Case {
    int n;
    Poly y;
    double want;
  };
  const Case cases[] = {{1, {0, 0, 0, 1}, -1.0 / 12}, {2, {0, 0, 0, 0, 1}, -1.0 / 27},
                        {3, {0, 0, 0, 0, 0, 1}, -27.0 / 1280}};
  for (const auto& cs : cases) {
    PolyCurve c{{0, 1}, cs.y, ""};
    auto e = asymptote_model_check(c, 0.0, cs.n);
    check(rel_close(e.limit, cs.want, 0.01),
          "n=" + std::to_string(cs.n) + " limit " + f6(e.limit) + " want " + f6(cs.want));
  }
}

void crit_lc(const AcceptanceConfig& cfg, Check& check, TraceCache& cache) {
  auto f = model_family("LC");
  const auto& ts = cache.get("LC", cfg.trace);
  auto expect = [&](const std::string& label, const std::vector<std::string>& names,
                    std::vector<double> coeffs) {
    auto fits = curved_fits(ts, names);
    std::string found;
    for (const auto* p : fits) found += " [" + fit_str(*p) + "]";
    bool ok = !fits.empty();
    for (const auto* p : fits)
      if (std::fabs(p->exponent - 2.0) > 0.05) ok = false;
    for (double c : coeffs) {
      bool hit = std::any_of(fits.begin(), fits.end(),
                             [&](const PowerFit* p) { return rel_close(p->coefficient, c, 0.05); });
      ok = ok && hit;
    }
    std::string want = "e=2";
    for (double c : coeffs) want += " c=" + f6(c);
    check(ok, label + " want " + want + ";" + (found.empty() ? " no fits" : found));
  };
  expect("LI", {"LI+", "LI-"}, {1.0 / 3.0});
  double r5 = 2.0 * std::sqrt(5.0);
  expect("V(2)", {"V(2)"}, {(5.0 - r5) / 25.0, (5.0 + r5) / 25.0});
  expect("LT", {"LT+", "LT-"}, {-1.0});
  expect("VT", {"VT"}, {});

  const StratumTrace* v2 = find_trace(ts, "V(2)");
  auto res = lc_vertex2_resultant(f, 1e-3, 0.05, 5e-4);
  double h = v2 ? hausdorff_resultant_vs_trace(res, *v2, 1e-3, 0.05) : INFINITY;
  check(std::isfinite(h) && h <= 1e-6, "V(2) resultant vs system Hausdorff " + f6(h));
}

void crit_rc(const AcceptanceConfig& cfg, Check& check, TraceCache& cache) {
  const auto& ts = cache.get("RC", cfg.trace);
  struct Want {
    const char* stratum;
    double e, c;
  };
  const Want wants[] = {{"I(2)", 3, 1.0 / 16}, {"IT", 3, -0.25}, {"V(2)", 2, 0.05},
                        {"VT", 2, -0.75},      {"Tc", 2, 0.25}};
  for (const auto& w : wants) {
    auto fits = curved_fits(ts, {w.stratum});
    std::string found;
    for (const auto* p : fits) found += " [" + fit_str(*p) + "]";
    bool ok = std::any_of(fits.begin(), fits.end(), [&](const PowerFit* p) {
      return p->independent == 1 && p->exponent_round == w.e && rel_close(p->coefficient, w.c, 0.05);
    });
    check(ok, std::string(w.stratum) + " want s2=" + f6(w.c) + "*s1^" + f6(w.e) + ";" +
                  (found.empty() ? " no fits" : found));
  }
  for (const char* n : {"LI+", "LI-", "LT+", "LT-"}) {
    const auto* t = find_trace(ts, n);
    check(t && t->empty(), std::string(n) + " empty");
  }
}

void crit_regions(const AcceptanceConfig& cfg, Check& check, TraceCache& cache) {
  const auto& names = model_family_names();
  std::vector<std::future<std::pair<SweepResult, RegionReport>>> jobs;
  for (const auto& n : names) {
    auto job = [&cfg, &cache, n] {
      auto f = model_family(n);
      const auto& ts = cache.get(n, cfg.trace);
      auto sw = census_sweep(f, -cfg.sweep_box, cfg.sweep_box, cfg.sweep_n, cfg.detect);
      auto rep = region_check(f, sw, ts);
      return std::make_pair(std::move(sw), std::move(rep));
    };
    jobs.push_back(std::async(cfg.parallel ? std::launch::async : std::launch::deferred, job));
  }
  for (std::size_t i = 0; i < names.size(); ++i) {
    auto [sw, rep] = jobs[i].get();
    std::string d = names[i] + ": " + std::to_string(sw.regions) + " regions, " +
                    std::to_string(rep.changing_pairs) + "/" + std::to_string(rep.checked_pairs) +
                    " changing pairs, " + std::to_string(rep.violations.size()) + " violations";
    if (!rep.violations.empty()) {
      const auto& v = rep.violations.front();
      d += "; first (" + f6(v.a[0]) + "," + f6(v.a[1]) + ") '" + v.fa + "' vs (" + f6(v.b[0]) + "," +
           f6(v.b[1]) + ") '" + v.fb + "'";
    }
    check(rep.violations.empty(), d);
  }
}

// Central differences with two Richardson steps.
double fd(const std::function<double(double)>& g, double t, int n, double h) {
  auto cd = [&](double hh) {
    switch (n) {
      case 1:
        return (g(t + hh) - g(t - hh)) / (2 * hh);
      case 2:
        return (g(t + hh) - 2 * g(t) + g(t - hh)) / (hh * hh);
      default:
        return (g(t + 2 * hh) - 2 * g(t + hh) + 2 * g(t - hh) - g(t - 2 * hh)) / (2 * hh * hh * hh);
    }
  };
  double a = cd(h), b = cd(h / 2), c = cd(h / 4);
  double ab = (4 * b - a) / 3, bc = (4 * c - b) / 3;
  return (16 * bc - ab) / 15;
}

Poly random_poly(std::mt19937& rng, int deg) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Poly p(static_cast<std::size_t>(deg) + 1);
  for (auto& v : p) v = u(rng);
  return p;
}

void crit_properties(const AcceptanceConfig& cfg, Check& check) {
  std::mt19937 rng(cfg.seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);

  // Jet arithmetic against finite differences.
  {
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
      Poly p = random_poly(rng, 5), q = random_poly(rng, 4), r = random_poly(rng, 3);
      r[0] = 3.0;  // keeps r and r^2 + 1 away from zero on [-1/2, 1/2]
      double t0 = 0.5 * u(rng);
      auto val = [&](double t) {
        double pv = poly_eval(p, t), qv = poly_eval(q, t), rv = poly_eval(r, t);
        return pv * qv / rv + std::sqrt(rv * rv + 1.0);
      };
      int k = 4;
      auto P = jet_eval(p, t0, k), Q = jet_eval(q, t0, k), R = jet_eval(r, t0, k);
      auto J = P * Q / R + jet_sqrt(R * R + 1.0);
      for (int n = 1; n <= 3; ++n) {
        double d = fd(val, t0, n, 0.02);
        double e = std::fabs(J.derivative_value(n) - d) / std::max(1.0, std::fabs(d));
        worst = std::max(worst, e);
      }
      PolyCurve c{random_poly(rng, 4), random_poly(rng, 4), ""};
      c.x[1] = 2.0;  // timelike and regular near t1
      c.y[1] = 0.3;
      double t1 = 0.1 * u(rng);
      auto kap = [&](double t) { return curvature_jet(c, t, 0)[0]; };
      auto K = curvature_jet(c, t1, 4);
      for (int n = 1; n <= 3; ++n) {
        double d = fd(kap, t1, n, 0.01);
        double e = std::fabs(K.derivative_value(n) - d) / std::max(1.0, std::fabs(d));
        worst = std::max(worst, e);
      }
    }
    check(worst <= 1e-5, "jets vs finite differences, worst relative error " + f6(worst));
  }

  std::vector<PolyCurve> curves{{{0, 0, 1}, {0, 0, 0, 1}, ""},
                                {{0, 0, 1}, {0, 0, 1, 1}, ""},
                                {{0, 1}, {0, 1, 1}, ""},
                                {{0, 1}, {0, 0, 1, 0, 0.5}, ""},
                                {{0, 1}, {0, 0, 0.3, 1, -0.4}, ""}};
  for (int i = 0; i < 3; ++i) {
    PolyCurve c{{0, 1, 0.2 * u(rng)}, random_poly(rng, 4), ""};
    curves.push_back(c);
  }

  // Caustic samples lie on the bifurcation set.
  {
    double worst = 0.0;
    std::size_t n = 0;
    for (const auto& c : curves) {
      for (const auto& br : caustic(c, -0.5, 0.5)) {
        if (br.kind == BranchKind::Line) continue;
        for (const auto& s : br.samples) {
          if (s.asymptotic) continue;
          auto [d1, d2] = bif_residual(c, s.t, s.p);
          worst = std::max({worst, std::fabs(d1), std::fabs(d2)});
          ++n;
        }
      }
    }
    check(n > 0 && worst <= 1e-8, "d' = d'' = 0 on " + std::to_string(n) + " caustic samples, worst " + f6(worst));
  }

  // Caustic agrees with the evolute off special points.
  {
    double worst = 0.0;
    std::size_t n = 0;
    for (const auto& c : curves) {
      auto cen = find_special_points(c, -0.5, 0.5, cfg.detect);
      for (int i = 0; i <= 200; ++i) {
        double t = -0.5 + i / 200.0;
        bool near = std::any_of(cen.points.begin(), cen.points.end(),
                                [&](const SpecialPoint& p) { return std::fabs(p.t - t) < 0.02; });
        if (near) continue;
        Vec2 a = caustic_point(c, t), e = evolute(c, t);
        double scale = std::max(1.0, std::hypot(e.x, e.y));
        worst = std::max(worst, std::hypot(a.x - e.x, a.y - e.y) / scale);
        ++n;
      }
    }
    check(n > 0 && worst <= 1e-9, "caustic = evolute at " + std::to_string(n) + " parameters, worst " + f6(worst));
  }

  // Lightlike points: caustic has second order contact.
  {
    PolyCurve base{{0, 1}, {0, 1, 1}, "(t,t+t^2)"};
    int k0 = lightlike_caustic_contact(base, 0.0);
    check(k0 == 2, "(t,t+t^2) contact order " + std::to_string(k0));
    int good = 0, made = 0;
    std::string bad;
    while (made < cfg.random_curves) {
      // Lightlike at 0 with a nonzero quadratic term, so not an inflection.
      PolyCurve c{{0, 1}, {0, 1, 0.3 + std::fabs(u(rng)), u(rng), u(rng), u(rng)}, ""};
      if (u(rng) < 0) c.y[2] = -c.y[2];
      if (std::fabs(vertex_numerator_jet(c, 0.0, 0)[0]) < 1e-6) continue;
      ++made;
      int k = lightlike_caustic_contact(c, 0.0);
      if (k == 2)
        ++good;
      else
        bad += " " + std::to_string(k);
    }
    check(good == made, std::to_string(good) + "/" + std::to_string(made) +
                            " random lightlike curves with contact 2" + (bad.empty() ? "" : ";" + bad));
  }
}

}  // namespace

const std::vector<std::string>& criterion_names() {
  static const std::vector<std::string> n{"li-subset-v",     "i2-census",      "li-census",
                                          "cusp-family",     "caustic-expansions", "evolute-asymptotes",
                                          "lc-strata",       "rc-strata",      "region-consistency",
                                          "property-suites"};
  return n;
}

std::string CriterionResult::line() const {
  char b[32];
  std::snprintf(b, sizeof b, " (%.2f s)", seconds);
  return std::string(pass ? "[PASS] " : "[FAIL] ") + std::to_string(id) + " " + name + b;
}

namespace {

CriterionResult run_one(int id, const AcceptanceConfig& cfg, TraceCache& cache) {
  if (id < 1 || id > 10) throw std::out_of_range("criterion id must be in 1..10");
  CriterionResult r;
  r.id = id;
  r.name = criterion_names()[static_cast<std::size_t>(id - 1)];
  r.pass = true;
  Check check{&r};
  auto t0 = std::chrono::steady_clock::now();
  try {
    switch (id) {
      case 1: crit_li_subset(cfg, check); break;
      case 2: crit_i2(cfg, check); break;
      case 3: crit_li(cfg, check); break;
      case 4: crit_cusp_family(cfg, check); break;
      case 5: crit_caustic_expansions(cfg, check); break;
      case 6: crit_asymptotes(cfg, check); break;
      case 7: crit_lc(cfg, check, cache); break;
      case 8: crit_rc(cfg, check, cache); break;
      case 9: crit_regions(cfg, check, cache); break;
      case 10: crit_properties(cfg, check); break;
    }
  } catch (const std::exception& e) {
    check(false, std::string("exception: ") + e.what());
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

}  // namespace

CriterionResult run_criterion(int id, const AcceptanceConfig& cfg) {
  TraceCache cache;
  return run_one(id, cfg, cache);
}

std::vector<CriterionResult> run_acceptance(const std::vector<int>& ids, const AcceptanceConfig& cfg) {
  std::vector<int> which = ids;
  if (which.empty())
    for (int i = 1; i <= 10; ++i) which.push_back(i);
  TraceCache cache;
  std::vector<CriterionResult> out;
  for (int id : which) out.push_back(run_one(id, cfg, cache));
  return out;
}

}  // namespace mink
