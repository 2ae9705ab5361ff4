#include "minkcurve/multilocal.hpp"

#include <algorithm>
#include <optional>
#include <cmath>
#include <sstream>

#include "minkcurve/solve.hpp"

namespace mink {

namespace {

MPoly as_mpoly(const Poly& p) {
  MPoly r;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0.0) continue;
    Exps e{static_cast<std::uint8_t>(i), 0, 0, 0};
    r.terms[e] = p[i];
  }
  return r;
}

// If one equation reads k*t2 + p(t1) = 0 with constant k != 0, eliminate t2
// and return the candidate pairs from the univariate remainder.
std::optional<std::vector<std::pair<double, double>>> eliminate_linear(const std::vector<MPoly>& eqs,
                                                                        double a, double b) {
  for (int e = 0; e < 2; ++e) {
    const MPoly& lin = eqs[e];
    if (lin.degree_in(1) != 1) continue;
    double k = 0.0;
    Poly rest;
    bool ok = true;
    for (const auto& [ex, c] : lin.terms) {
      if (ex[1] == 1) {
        if (ex[0] != 0) ok = false;
        k = c;
      } else {
        if (rest.size() <= ex[0]) rest.resize(ex[0] + 1, 0.0);
        rest[ex[0]] += c;
      }
    }
    if (!ok || k == 0.0) continue;
    Poly t2 = poly_scale(rest, -1.0 / k);
    const MPoly& other = eqs[1 - e];
    Poly uni;
    for (const auto& [ex, c] : other.terms) {
      Poly term(ex[0] + 1, 0.0);
      term[ex[0]] = c;
      for (int j = 0; j < ex[1]; ++j) term = poly_mul(term, t2);
      uni = poly_add(uni, term);
    }
    uni = poly_trim(uni);
    std::vector<std::pair<double, double>> out;
    if (poly_degree(uni) < 0) return std::nullopt;  // dependent equations
    for (const auto& r : poly_real_roots(uni, a, b)) {
      double u = poly_eval(t2, r.t);
      if (u >= a && u <= b) out.emplace_back(r.t, u);
    }
    return out;
  }
  return std::nullopt;
}

}  // namespace

std::vector<MPoly> deflated_position(const PolyCurve& c) {
  return {as_mpoly(c.x).divided_difference(0, 1), as_mpoly(c.y).divided_difference(0, 1)};
}

std::vector<SelfIntersection> find_self_intersections(const PolyCurve& c, double a, double b,
                                                      const SelfIntersectionConfig& cfg) {
  std::vector<SelfIntersection> out;
  auto eqs = deflated_position(c);
  // A constant component makes its divided difference vanish identically;
  // the curve then lies on a line and has no transverse crossings to find.
  if (eqs[0].is_zero() || eqs[1].is_zero()) return out;
  std::vector<std::pair<double, double>> pairs;
  if (auto el = eliminate_linear(eqs, a, b)) {
    for (auto [u, v] : *el) pairs.emplace_back(std::min(u, v), std::max(u, v));
  } else {
    PolySystem sys(eqs, 2);
    SubdivisionConfig scfg;
    const double sep = cfg.separation;
    scfg.keep = [sep](const std::vector<Interval>& box) { return box[1].hi - box[0].lo >= sep; };
    for (const auto& r : solve_subdivision(sys, {Interval(a, b), Interval(a, b)}, scfg).roots)
      pairs.emplace_back(r[0], r[1]);
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end(),
                          [](const auto& p, const auto& q) {
                            return std::fabs(p.first - q.first) < 1e-9 &&
                                   std::fabs(p.second - q.second) < 1e-9;
                          }),
              pairs.end());
  for (auto [t1, t2] : pairs) {
    if (t2 - t1 < cfg.separation) continue;
    Vec2 p1 = c.point(t1), p2 = c.point(t2);
    double scale = 1.0 + std::sqrt(euclid_norm2(p1));
    if (std::sqrt(euclid_norm2(p1 - p2)) > cfg.point_tol * scale) continue;
    SelfIntersection s;
    s.t1 = t1;
    s.t2 = t2;
    s.point = p1;
    Vec2 u = c.d1(t1), v = c.d1(t2);
    double det = u.x * v.y - v.x * u.y;
    double nrm = std::sqrt(euclid_norm2(u) * euclid_norm2(v));
    s.tangency_residual = nrm > 0 ? det / nrm : 0.0;
    s.tangential = std::fabs(s.tangency_residual) <= cfg.tangency_tol;
    out.push_back(s);
  }
  std::sort(out.begin(), out.end(), [](const auto& p, const auto& q) {
    return p.t1 != q.t1 ? p.t1 < q.t1 : p.t2 < q.t2;
  });
  return out;
}

std::string order_features(const Census& census, const std::vector<SelfIntersection>& xs) {
  std::vector<std::pair<double, std::string>> items;
  for (const auto& p : census.points) items.emplace_back(p.t, p.token());
  for (const auto& x : xs) {
    items.emplace_back(x.t1, "X(");
    items.emplace_back(x.t2, "X)");
  }
  std::stable_sort(items.begin(), items.end(),
                   [](const auto& p, const auto& q) { return p.first < q.first; });
  std::ostringstream os;
  for (std::size_t i = 0; i < items.size(); ++i) os << (i ? " " : "") << items[i].second;
  return os.str();
}

Analysis analyze_curve(const PolyCurve& c, double a, double b, const DetectConfig& dcfg,
                       const SelfIntersectionConfig& xcfg) {
  Analysis r;
  r.census = find_special_points(c, a, b, dcfg);
  r.census.self_intersections = find_self_intersections(c, a, b, xcfg);
  r.features = order_features(r.census, r.census.self_intersections);
  return r;
}

}  // namespace mink
