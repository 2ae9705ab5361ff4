#pragma once

#include <vector>

namespace mink {

// Univariate polynomial, ascending coefficients.
using Poly = std::vector<double>;

double poly_eval(const Poly& p, double t);
// Value and a running bound on the rounding error of Horner's scheme.
double poly_eval_bound(const Poly& p, double t, double* err);
Poly poly_derivative(const Poly& p);
Poly poly_add(const Poly& a, const Poly& b);
Poly poly_sub(const Poly& a, const Poly& b);
Poly poly_mul(const Poly& a, const Poly& b);
Poly poly_scale(const Poly& a, double s);
// Drops trailing zero coefficients (exact zeros only).
Poly poly_trim(Poly p);
int poly_degree(const Poly& p);

struct PolyRoot {
  double t;
  int multiplicity;
};

// All real roots in [a,b]. Critical points of p (found recursively) split
// the interval into monotone pieces, so close pairs and tangential roots
// are not lost. Roots closer than merge_radius are merged.
std::vector<PolyRoot> poly_real_roots(const Poly& p, double a, double b,
                                      double merge_radius = 1e-7);

// Multiplicity of a root read from the Taylor jet at t: count of leading
// coefficients that are negligible relative to the first significant one.
int root_multiplicity(const Poly& p, double t, double radius = 1e-6);

}  // namespace mink
