#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "minkcurve/multilocal.hpp"
#include "minkcurve/mpoly.hpp"

namespace mink {

// Variables: slot 0 = t, slot 1 = s1, slot 2 = s2.
struct ParamFamily {
  std::string name;
  // Degenerate phenomenon at s = 0: I2, I3, LI, LI2, C, LC, RC, V2.
  std::string singularity;
  int arity = 1;
  MPoly x, y;
  double window_lo = -0.5, window_hi = 0.5;

  PolyCurve at(double s1, double s2 = 0.0) const;
};

ParamFamily model_family(const std::string& name);
const std::vector<std::string>& model_family_names();

struct GenericityCondition {
  std::string name;
  double value;
  bool defined = true;
  bool pass;
};

struct GenericityReport {
  std::vector<GenericityCondition> conditions;
  bool generic = true;
};

GenericityReport check_genericity(const ParamFamily& f);

// Defining equations of a stratum as polynomials in (t, s1.., ) for local
// strata or (t1, t2, s1..) for bi-local ones; the position equations are
// divided by t1 - t2.
struct StratumSystem {
  StratumId id;
  std::vector<MPoly> eqs;
  int nt = 1;      // number of curve parameters
  int arity = 1;   // number of family parameters
  int nvars() const { return nt + arity; }
};

StratumSystem stratum_system(const ParamFamily& f, const StratumId& id);

// Strata whose traces delimit census regions.
const std::vector<StratumId>& boundary_strata();

struct TraceConfig {
  double box = 0.05;         // parameter half-width
  double ring = 1e-3;        // half-size of the seeding square around the origin
  double origin_stop = 2e-6;
  double separation = 1e-4;  // minimum |t1 - t2| for bi-local strata
  double step_max = 2e-3;
  double step_rel = 0.05;    // cap on |ds| relative to |s| per step
  double fit_lo = 1e-3, fit_hi = 2e-2;
  double singular_tol = 1e-9;
  bool boundary_seeds = true;
};

struct TracedCurve {
  std::vector<std::array<double, 2>> s;  // (s1, s2) along the curve
  std::vector<std::vector<double>> t;    // curve parameters at each point
  bool through_origin = false;
};

struct StratumPoint {  // arity-one families
  double s;
  std::vector<double> t;
};

struct PowerFit {
  bool axis = false;        // dependent parameter vanishes identically
  int independent = 1;      // 1 = s1, 2 = s2
  double exponent = 0.0;    // free fit
  double exponent_round = 0.0;  // nearest half-integer, used for the coefficient
  double coefficient = 0.0; // s_dep = c * s_indep^e
  double residual = 0.0;    // max relative misfit of the corrected model
  double leading_residual = 0.0;  // same for c * s_indep^e alone
  int rays = 0;
  std::vector<int> sides;   // sign of s_indep on each ray
};

struct StratumTrace {
  StratumId stratum;
  std::vector<TracedCurve> curves;
  std::vector<StratumPoint> points;
  std::vector<PowerFit> fits;  // germ branches only
  double max_residual = 0.0;   // stratum equations evaluated through jets

  bool empty() const { return curves.empty() && points.empty(); }
  bool germ_empty() const;
};

StratumTrace trace_stratum(const ParamFamily& f, const StratumId& id, const TraceConfig& cfg = {});

// V(2) of the lightlike cusp family through the discriminant of the quartic
// formed by the four small roots of the vertex numerator; the lightlike
// inflection component is removed.
struct ResultantPoint {
  double s1, s2;
};
std::vector<std::vector<ResultantPoint>> lc_vertex2_resultant(const ParamFamily& f,
                                                              double s2_lo = 1e-3,
                                                              double s2_hi = 0.05,
                                                              double ds2 = 5e-4);

// Symmetric Hausdorff distance between the resultant branches and the system
// trace, both restricted to s2_lo <= |s2| <= s2_hi.
double hausdorff_resultant_vs_trace(const std::vector<std::vector<ResultantPoint>>& res,
                                    const StratumTrace& trace, double s2_lo, double s2_hi);

struct SweepCell {
  double s1 = 0.0, s2 = 0.0;
  std::string features;
  int region = -1;
};

struct SweepResult {
  int n1 = 0, n2 = 1;  // grid shape; n2 = 1 for arity-one families
  std::vector<SweepCell> cells;  // row-major, s2 slowest
  int regions = 0;
  const SweepCell& cell(int i, int j) const { return cells[static_cast<std::size_t>(j * n1 + i)]; }
};

SweepResult census_sweep(const ParamFamily& f, double lo, double hi, int n,
                         const DetectConfig& dcfg = {});

struct RegionViolation {
  std::array<double, 2> a, b;
  std::string fa, fb;
};

struct RegionReport {
  int checked_pairs = 0;
  int changing_pairs = 0;
  std::vector<RegionViolation> violations;
};

RegionReport region_check(const ParamFamily& f, const SweepResult& sweep,
                          const std::vector<StratumTrace>& traces, double tol = 1e-9);

std::vector<StratumTrace> trace_all(const ParamFamily& f, const TraceConfig& cfg = {});

std::vector<Analysis> swallowtail_census(const ParamFamily& f, const std::vector<double>& s);

}  // namespace mink
