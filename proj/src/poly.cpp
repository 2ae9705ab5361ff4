#include "minkcurve/poly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "minkcurve/jet.hpp"

namespace mink {

namespace {
constexpr double kEps = std::numeric_limits<double>::epsilon();
}

double poly_eval(const Poly& p, double t) {
  double r = 0.0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) r = r * t + *it;
  return r;
}

double poly_eval_bound(const Poly& p, double t, double* err) {
  double r = 0.0, mag = 0.0, at = std::fabs(t);
  for (auto it = p.rbegin(); it != p.rend(); ++it) {
    r = r * t + *it;
    mag = mag * at + std::fabs(*it);
  }
  if (err) *err = 4.0 * static_cast<double>(p.size() + 1) * kEps * mag;
  return r;
}

Poly poly_derivative(const Poly& p) {
  if (p.size() <= 1) return {0.0};
  Poly d(p.size() - 1);
  for (std::size_t i = 1; i < p.size(); ++i) d[i - 1] = p[i] * static_cast<double>(i);
  return d;
}

Poly poly_add(const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return r;
}

Poly poly_sub(const Poly& a, const Poly& b) { return poly_add(a, poly_scale(b, -1.0)); }

Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {0.0};
  Poly r(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

Poly poly_scale(const Poly& a, double s) {
  Poly r(a);
  for (auto& v : r) v *= s;
  return r;
}

Poly poly_trim(Poly p) {
  while (p.size() > 1 && p.back() == 0.0) p.pop_back();
  if (p.empty()) p.push_back(0.0);
  return p;
}

int poly_degree(const Poly& p) {
  Poly q = poly_trim(p);
  if (q.size() == 1 && q[0] == 0.0) return -1;
  return static_cast<int>(q.size()) - 1;
}

namespace {

double bisect(const Poly& p, double lo, double hi, double flo) {
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    double fm = poly_eval(p, mid);
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

// Roots of p in [a,b] without multiplicity bookkeeping.
std::vector<double> roots_rec(const Poly& p, double a, double b) {
  int deg = poly_degree(p);
  std::vector<double> out;
  if (deg <= 0) return out;
  if (deg == 1) {
    double r = -p[0] / p[1];
    if (r >= a && r <= b) out.push_back(r);
    return out;
  }
  std::vector<double> crit = roots_rec(poly_derivative(p), a, b);
  std::vector<double> brk;
  brk.reserve(crit.size() + 2);
  brk.push_back(a);
  for (double c : crit)
    if (c > a && c < b) brk.push_back(c);
  brk.push_back(b);

  std::vector<double> val(brk.size()), err(brk.size());
  for (std::size_t i = 0; i < brk.size(); ++i) val[i] = poly_eval_bound(p, brk[i], &err[i]);

  for (std::size_t i = 0; i < brk.size(); ++i) {
    if (std::fabs(val[i]) <= err[i]) out.push_back(brk[i]);
  }
  for (std::size_t i = 0; i + 1 < brk.size(); ++i) {
    bool zl = std::fabs(val[i]) <= err[i], zr = std::fabs(val[i + 1]) <= err[i + 1];
    if (zl || zr) continue;
    if ((val[i] < 0) != (val[i + 1] < 0)) out.push_back(bisect(p, brk[i], brk[i + 1], val[i]));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

int root_multiplicity(const Poly& p, double t, double radius) {
  Poly q = poly_trim(p);
  if (poly_degree(q) < 0) return std::numeric_limits<int>::max();
  double err;
  double v = poly_eval_bound(q, t, &err);
  double scale = 0.0;
  for (double c : q) scale = std::max(scale, std::fabs(c));
  if (std::fabs(v) > std::max(64.0 * err, 1e-12 * scale)) return 0;
  // Each further derivative that still vanishes within the radius adds one.
  int m = 1;
  for (q = poly_derivative(q); poly_degree(q) >= 0; q = poly_derivative(q)) {
    double e;
    double w = poly_eval_bound(q, t, &e);
    bool zero = std::fabs(w) <= 64.0 * e ||
                (poly_degree(q) >= 1 && !roots_rec(q, t - radius, t + radius).empty());
    if (!zero) break;
    ++m;
  }
  return m;
}

std::vector<PolyRoot> poly_real_roots(const Poly& p, double a, double b, double merge_radius) {
  std::vector<double> raw = roots_rec(poly_trim(p), a, b);
  std::vector<PolyRoot> out;
  std::size_t i = 0;
  while (i < raw.size()) {
    std::size_t j = i;
    while (j + 1 < raw.size() && raw[j + 1] - raw[i] <= merge_radius) ++j;
    double t = 0.5 * (raw[i] + raw[j]);
    int m = root_multiplicity(p, t);
    if (m == 0) m = 1;
    out.push_back({t, std::max<int>(m, static_cast<int>(j - i + 1))});
    i = j + 1;
  }
  return out;
}

}  // namespace mink
