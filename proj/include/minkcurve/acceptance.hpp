#pragma once

#include <string>
#include <vector>

#include "minkcurve/families.hpp"

namespace mink {

struct AcceptanceConfig {
  DetectConfig detect;
  TraceConfig trace;
  int sweep_n = 41;
  double sweep_box = 0.05;
  int li_kmax = 5;
  int random_curves = 20;
  unsigned seed = 20240611u;
  bool parallel = true;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::vector<std::string> details;
  double seconds = 0.0;

  std::string line() const;  // "[PASS] 3 li-census (0.01 s)"
};

// ids in 1..10; an empty list runs all of them.
std::vector<CriterionResult> run_acceptance(const std::vector<int>& ids = {},
                                            const AcceptanceConfig& cfg = {});
CriterionResult run_criterion(int id, const AcceptanceConfig& cfg = {});
const std::vector<std::string>& criterion_names();

}  // namespace mink
