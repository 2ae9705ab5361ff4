#pragma once

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "minkcurve/minkowski.hpp"

namespace mink {

enum class PointKind { Lightlike, Inflection, Vertex, LightlikeInflection, Cusp };
enum class VertexDir { Inward, Outward, Undefined };
enum class CuspKind { Ordinary, LightlikeOrdinary, Ramphoid, Other };

const char* to_string(PointKind k);
const char* to_string(VertexDir d);
const char* to_string(CuspKind k);

struct SpecialPoint {
  double t = 0.0;
  PointKind kind = PointKind::Lightlike;
  int order = 1;
  bool order_saturated = false;  // all derivatives negligible up to jet order
  VertexDir direction = VertexDir::Undefined;
  CuspKind cusp = CuspKind::Other;
  // Zero multiplicities of the inflection and vertex numerators absorbed at a cusp.
  int concentrated_inflections = 0;
  int concentrated_vertices = 0;
  std::vector<std::pair<std::string, double>> residuals;

  std::string token() const;
};

struct SelfIntersection {
  double t1 = 0.0, t2 = 0.0;
  Vec2 point;
  bool tangential = false;
  double tangency_residual = 0.0;
};

struct Census {
  double a = 0.0, b = 0.0;
  std::vector<SpecialPoint> points;
  std::vector<SelfIntersection> self_intersections;

  int count(PointKind k) const;
  int count_vertices(VertexDir d) const;
};

struct DetectConfig {
  int grid = 4096;
  double tol_t = 1e-12;
  double f_tol = 1e-12;
  double merge_radius = 1e-7;
  double rel_zero = 1e-6;
  int jet_order = kDefaultJetOrder;
  double lightlike_tol = kLightlikeTol;
  int derivative_depth = 2;
};

struct RootEstimate {
  double t;
  int multiplicity;
};

// Scalar function given through its Taylor jet: f(t, k) returns the order-k jet at t.
using JetFn = std::function<Jet<double>(double, int)>;

std::vector<RootEstimate> isolate_roots(const JetFn& f, double a, double b,
                                        const DetectConfig& cfg = {});

Census find_special_points(const PolyCurve& c, double a, double b, const DetectConfig& cfg = {});

// k such that the height function along perp(gamma'(t0)) has an A_k
// singularity at t0.
int contact_order_with_tangent(const PolyCurve& c, double t0, const DetectConfig& cfg = {});

struct CuspInfo {
  CuspKind kind;
  Causal limiting_tangent;
  std::vector<double> odd_coeffs;  // d3, d4, d5 after reparametrising x = u^2
};

CuspInfo classify_cusp_info(const PolyCurve& c, double t0, const DetectConfig& cfg = {});
CuspKind classify_cusp(const PolyCurve& c, double t0, const DetectConfig& cfg = {});

}  // namespace mink
