#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "minkcurve/poly.hpp"

namespace mink {

struct Interval {
  double lo = 0.0, hi = 0.0;
  Interval() = default;
  Interval(double v) : lo(v), hi(v) {}
  Interval(double l, double h) : lo(l), hi(h) {}
  double mid() const { return 0.5 * (lo + hi); }
  double width() const { return hi - lo; }
  bool contains(double v) const { return lo <= v && v <= hi; }
};

Interval operator+(const Interval& a, const Interval& b);
Interval operator-(const Interval& a, const Interval& b);
Interval operator*(const Interval& a, const Interval& b);
Interval ipow(const Interval& a, int n);
Interval intersect(const Interval& a, const Interval& b);

constexpr int kMaxVars = 4;
using Exps = std::array<std::uint8_t, kMaxVars>;

// Sparse real polynomial in up to four variables.
class MPoly {
 public:
  MPoly() = default;
  MPoly(double c) { if (c != 0.0) terms[Exps{0, 0, 0, 0}] = c; }
  bool operator==(const MPoly& o) const = default;
  static MPoly constant(double c);
  static MPoly var(int i);

  std::map<Exps, double> terms;

  bool is_zero() const { return terms.empty(); }
  int degree_in(int var) const;
  int total_degree() const;

  MPoly& operator+=(const MPoly& o);
  MPoly& operator-=(const MPoly& o);
  MPoly& operator*=(double s);
  friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
  friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
  friend MPoly operator-(MPoly a) { return a *= -1.0; }
  friend MPoly operator*(MPoly a, double s) { return a *= s; }
  friend MPoly operator*(double s, MPoly a) { return a *= s; }
  friend MPoly operator*(const MPoly& a, const MPoly& b);
  MPoly& operator*=(const MPoly& o) { return *this = *this * o; }
  friend MPoly operator+(MPoly a, double s) { return a += constant(s); }
  friend MPoly operator-(MPoly a, double s) { return a -= constant(s); }

  MPoly derivative(int var) const;
  double eval(const double* x) const;
  double eval(const std::vector<double>& x) const { return eval(x.data()); }
  // Natural interval extension intersected with the mean-value form.
  Interval eval(const Interval* box, int nvars) const;
  // Substitute x_var := value, leaving a polynomial in the remaining variables.
  MPoly substitute(int var, double value) const;
  // Coefficients in x_var after fixing all other variables.
  Poly univariate(int var, const double* x) const;
  // Rename variables: new exponent slot map[i] receives old slot i.
  MPoly remap(const std::array<int, kMaxVars>& map) const;
  // Replace x_var by (a + b x_var).
  MPoly affine_substitute(int var, double a, double b) const;
  // (p(x_i = u) - p(x_i = v)) / (u - v), with u in slot var and v in slot other.
  MPoly divided_difference(int var, int other) const;

  void prune(double tol = 0.0);
  std::string to_string(const std::vector<std::string>& names) const;
};

MPoly pow(const MPoly& p, int n);

}  // namespace mink
