#include "minkcurve/mpoly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace mink {

Interval operator+(const Interval& a, const Interval& b) { return {a.lo + b.lo, a.hi + b.hi}; }
Interval operator-(const Interval& a, const Interval& b) { return {a.lo - b.hi, a.hi - b.lo}; }
Interval operator*(const Interval& a, const Interval& b) {
  double p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  return {*std::min_element(p, p + 4), *std::max_element(p, p + 4)};
}
Interval ipow(const Interval& a, int n) {
  if (n == 0) return {1.0, 1.0};
  if (n % 2 == 1) return {std::pow(a.lo, n), std::pow(a.hi, n)};
  double l = std::pow(a.lo, n), h = std::pow(a.hi, n);
  if (a.lo <= 0.0 && a.hi >= 0.0) return {0.0, std::max(l, h)};
  return {std::min(l, h), std::max(l, h)};
}
Interval intersect(const Interval& a, const Interval& b) {
  return {std::max(a.lo, b.lo), std::min(a.hi, b.hi)};
}

MPoly MPoly::constant(double c) {
  MPoly p;
  if (c != 0.0) p.terms[Exps{0, 0, 0, 0}] = c;
  return p;
}

MPoly MPoly::var(int i) {
  MPoly p;
  Exps e{0, 0, 0, 0};
  e[i] = 1;
  p.terms[e] = 1.0;
  return p;
}

int MPoly::degree_in(int v) const {
  int d = -1;
  for (const auto& [e, c] : terms) d = std::max(d, static_cast<int>(e[v]));
  return d;
}

int MPoly::total_degree() const {
  int d = -1;
  for (const auto& [e, c] : terms) d = std::max(d, e[0] + e[1] + e[2] + e[3]);
  return d;
}

MPoly& MPoly::operator+=(const MPoly& o) {
  for (const auto& [e, c] : o.terms) {
    double& v = terms[e];
    v += c;
    if (v == 0.0) terms.erase(e);
  }
  return *this;
}

MPoly& MPoly::operator-=(const MPoly& o) {
  for (const auto& [e, c] : o.terms) {
    double& v = terms[e];
    v -= c;
    if (v == 0.0) terms.erase(e);
  }
  return *this;
}

MPoly& MPoly::operator*=(double s) {
  if (s == 0.0) {
    terms.clear();
    return *this;
  }
  for (auto& [e, c] : terms) c *= s;
  return *this;
}

MPoly operator*(const MPoly& a, const MPoly& b) {
  MPoly r;
  for (const auto& [ea, ca] : a.terms)
    for (const auto& [eb, cb] : b.terms) {
      Exps e;
      for (int i = 0; i < kMaxVars; ++i) {
        int s = ea[i] + eb[i];
        if (s > 255) throw std::overflow_error("polynomial degree too high");
        e[i] = static_cast<std::uint8_t>(s);
      }
      r.terms[e] += ca * cb;
    }
  r.prune();
  return r;
}

MPoly pow(const MPoly& p, int n) {
  MPoly r = MPoly::constant(1.0);
  for (int i = 0; i < n; ++i) r = r * p;
  return r;
}

MPoly MPoly::derivative(int v) const {
  MPoly r;
  for (const auto& [e, c] : terms) {
    if (e[v] == 0) continue;
    Exps f = e;
    f[v] -= 1;
    r.terms[f] += c * e[v];
  }
  return r;
}

double MPoly::eval(const double* x) const {
  double s = 0.0;
  for (const auto& [e, c] : terms) {
    double m = c;
    for (int i = 0; i < kMaxVars; ++i)
      for (int k = 0; k < e[i]; ++k) m *= x[i];
    s += m;
  }
  return s;
}

namespace {
Interval natural(const MPoly& p, const Interval* box, int nvars, double* mag) {
  Interval s(0.0);
  double m = 0.0;
  for (const auto& [e, c] : p.terms) {
    Interval t(c);
    double tm = std::fabs(c);
    for (int i = 0; i < nvars; ++i)
      if (e[i]) {
        t = t * ipow(box[i], e[i]);
        tm *= std::pow(std::max(std::fabs(box[i].lo), std::fabs(box[i].hi)), e[i]);
      }
    s = s + t;
    m += tm;
  }
  if (mag) *mag = m;
  return s;
}
}  // namespace

Interval MPoly::eval(const Interval* box, int nvars) const {
  double mag = 0.0;
  Interval nat = natural(*this, box, nvars, &mag);
  // Mean value form around the box centre.
  double c[kMaxVars] = {0, 0, 0, 0};
  for (int i = 0; i < nvars; ++i) c[i] = box[i].mid();
  Interval mv(eval(c));
  for (int i = 0; i < nvars; ++i) {
    if (box[i].width() == 0.0) continue;
    MPoly d = derivative(i);
    Interval di = natural(d, box, nvars, nullptr);
    mv = mv + di * Interval(box[i].lo - c[i], box[i].hi - c[i]);
  }
  Interval r = intersect(nat, mv);
  if (r.lo > r.hi) r = nat;
  double pad = 64.0 * std::numeric_limits<double>::epsilon() * mag + 1e-300;
  return {r.lo - pad, r.hi + pad};
}

MPoly MPoly::substitute(int v, double value) const {
  MPoly r;
  for (const auto& [e, c] : terms) {
    Exps f = e;
    f[v] = 0;
    r.terms[f] += c * std::pow(value, e[v]);
  }
  r.prune();
  return r;
}

Poly MPoly::univariate(int v, const double* x) const {
  int d = std::max(0, degree_in(v));
  Poly p(static_cast<std::size_t>(d) + 1, 0.0);
  for (const auto& [e, c] : terms) {
    double m = c;
    for (int i = 0; i < kMaxVars; ++i) {
      if (i == v) continue;
      for (int k = 0; k < e[i]; ++k) m *= x[i];
    }
    p[e[v]] += m;
  }
  return p;
}

MPoly MPoly::remap(const std::array<int, kMaxVars>& map) const {
  MPoly r;
  for (const auto& [e, c] : terms) {
    Exps f{0, 0, 0, 0};
    for (int i = 0; i < kMaxVars; ++i)
      if (e[i]) f[map[i]] = static_cast<std::uint8_t>(f[map[i]] + e[i]);
    r.terms[f] += c;
  }
  r.prune();
  return r;
}

MPoly MPoly::affine_substitute(int v, double a, double b) const {
  MPoly r;
  MPoly lin = MPoly::constant(a) + MPoly::var(v) * b;
  for (const auto& [e, c] : terms) {
    Exps f = e;
    f[v] = 0;
    MPoly m;
    m.terms[f] = c;
    r += m * pow(lin, e[v]);
  }
  return r;
}

MPoly MPoly::divided_difference(int v, int other) const {
  MPoly r;
  for (const auto& [e, c] : terms) {
    if (e[other] != 0) throw std::invalid_argument("divided difference slot already in use");
    int n = e[v];
    for (int i = 0; i < n; ++i) {
      Exps f = e;
      f[v] = static_cast<std::uint8_t>(i);
      f[other] = static_cast<std::uint8_t>(n - 1 - i);
      r.terms[f] += c;
    }
  }
  r.prune();
  return r;
}

void MPoly::prune(double tol) {
  for (auto it = terms.begin(); it != terms.end();) {
    if (std::fabs(it->second) <= tol)
      it = terms.erase(it);
    else
      ++it;
  }
}

std::string MPoly::to_string(const std::vector<std::string>& names) const {
  if (terms.empty()) return "0";
  std::ostringstream os;
  os.precision(12);
  bool first = true;
  for (const auto& [e, c] : terms) {
    double v = c;
    if (!first) {
      os << (v < 0 ? " - " : " + ");
      v = std::fabs(v);
    } else if (v < 0) {
      os << "-";
      v = -v;
    }
    first = false;
    bool mono = false;
    for (int i = 0; i < kMaxVars; ++i) mono |= e[i] != 0;
    if (!mono || v != 1.0) {
      os << v;
      if (mono) os << "*";
    }
    bool firstv = true;
    for (int i = 0; i < kMaxVars; ++i) {
      if (!e[i]) continue;
      if (!firstv) os << "*";
      firstv = false;
      os << names.at(i);
      if (e[i] > 1) os << "^" << int(e[i]);
    }
  }
  return os.str();
}

}  // namespace mink
