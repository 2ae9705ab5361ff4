#pragma once

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "minkcurve/detect.hpp"

namespace mink {

struct ModelMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// e(t) = gamma - N/kappa with N = +-gamma'^perp/sqrt|<gamma',gamma'>|,
// + on timelike and - on spacelike stretches.
Vec2 evolute(const PolyCurve& c, double t);

// lambda(t) = -<gamma',gamma'> / <gamma'^perp, gamma''>.
double caustic_lambda(const PolyCurve& c, double t);
Vec2 caustic_point(const PolyCurve& c, double t);

// d_u(t) = <gamma(t)-u, gamma(t)-u>; returns (d'_u, d''_u) at t, each divided
// by a natural scale so that the values are comparable across curves.
std::pair<double, double> bif_residual(const PolyCurve& c, double t, Vec2 u);

// Taylor jets in h of the caustic point at t0 + h.  Common zeros of the
// numerator and denominator of lambda are cancelled, so this also works at
// cusps and lightlike inflections.
std::pair<Jet<double>, Jet<double>> caustic_series(const PolyCurve& c, double t0, int k = 8);

struct CausticSample {
  double t;
  Vec2 p;
  bool asymptotic = false;  // clipped against the bounding box
};

struct SeriesAt {
  double t0;
  Jet<double> u1, u2;
};

enum class BranchKind { Parametrized, Line };

struct CausticBranch {
  BranchKind kind = BranchKind::Parametrized;
  std::vector<CausticSample> samples;
  std::vector<SeriesAt> series;
  // Line components: point and direction.
  Vec2 point, direction;
  double t0 = 0.0;
};

struct CausticConfig {
  int initial_samples = 400;
  double max_step = 0.02;       // Euclidean cap between consecutive image samples
  int max_refine = 12;
  double box = 10.0;            // samples with |u|_inf beyond this are flagged
  double gap = 1e-6;            // excluded parameter radius around splitting points
  DetectConfig detect;
};

std::vector<CausticBranch> caustic(const PolyCurve& c, double a, double b,
                                   const CausticConfig& cfg = {});

struct AsymptoteEstimate {
  double limit;
  std::vector<double> raw;       // x^n y at t_j
  std::vector<double> richardson;
};

// Limit of x^n y along the evolute in the tangent-normal frame at t0.
AsymptoteEstimate asymptote_model_check(const PolyCurve& c, double t0, int n, double h = 0.1,
                                        int levels = 12);

struct SideReport {
  bool lightlike = false;
  double curve_side = 0.0;  // sign of <gamma(t0 +- dt) - gamma(t0), perp gamma'(t0)>
  double focal_side = 0.0;  // same for the evolute / caustic samples
  bool opposite = false;
  std::vector<double> curve_values, focal_values;
};

SideReport side_checks(const PolyCurve& c, double t0, double dt = 1e-3);

// Order of contact between the caustic branch through a lightlike point and
// the curve: 2 for ordinary tangency.  Returns 0 if the branch is not tangent.
int lightlike_caustic_contact(const PolyCurve& c, double t0);

}  // namespace mink
