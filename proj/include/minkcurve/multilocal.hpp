#pragma once

#include <string>
#include <vector>

#include "minkcurve/detect.hpp"
#include "minkcurve/mpoly.hpp"

namespace mink {

struct SelfIntersectionConfig {
  double separation = 1e-4;  // minimum t2 - t1
  double tangency_tol = 1e-6;
  double point_tol = 1e-9;
};

// (x(t1) - x(t2))/(t1 - t2) and the same for y, in slots 0 and 1.
std::vector<MPoly> deflated_position(const PolyCurve& c);

std::vector<SelfIntersection> find_self_intersections(const PolyCurve& c, double a, double b,
                                                      const SelfIntersectionConfig& cfg = {});

// Space separated symbols ordered by t: L, I, I2.., LI, LI2.., V+, V-, V, V2..,
// C, LC, RC, C*, and "X(" / "X)" at the two parameters of each crossing.
std::string order_features(const Census& census, const std::vector<SelfIntersection>& xs);

// Census plus crossings plus feature string in one call.
struct Analysis {
  Census census;
  std::string features;
};
Analysis analyze_curve(const PolyCurve& c, double a, double b, const DetectConfig& dcfg = {},
                       const SelfIntersectionConfig& xcfg = {});

}  // namespace mink
