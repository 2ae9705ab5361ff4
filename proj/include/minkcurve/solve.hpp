#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <vector>

#include "minkcurve/mpoly.hpp"

namespace mink {

// Flat term list of an MPoly for repeated evaluation.
class CompiledPoly {
 public:
  CompiledPoly() = default;
  CompiledPoly(const MPoly& p, int nvars);

  double eval(const double* x) const;
  // Sum of |term| values; scale for residual tests.
  double magnitude(const double* x) const;
  Interval natural(const Interval* box) const;

 private:
  struct Term {
    double c;
    Exps e;
  };
  std::vector<Term> terms_;
  int nvars_ = 0;
};

// F: R^n -> R^m given by polynomial components, with cached partials.
class PolySystem {
 public:
  PolySystem(const std::vector<MPoly>& eqs, int nvars);

  int neq() const { return static_cast<int>(f_.size()); }
  int nvars() const { return nvars_; }
  Eigen::VectorXd eval(const Eigen::VectorXd& x) const;
  Eigen::MatrixXd jacobian(const Eigen::VectorXd& x) const;
  Eigen::VectorXd magnitudes(const Eigen::VectorXd& x) const;
  // Natural extension intersected with the mean value form.
  Interval enclose(int i, const Interval* box) const;
  // Max over components of |F_i| / (1 + magnitude_i).
  double scaled_residual(const Eigen::VectorXd& x) const;
  const std::vector<std::vector<CompiledPoly>>& partials() const { return df_; }

 private:
  int nvars_;
  std::vector<CompiledPoly> f_;
  std::vector<std::vector<CompiledPoly>> df_;
};

struct NewtonConfig {
  int max_iter = 60;
  double step_tol = 1e-14;
  double residual_tol = 1e-12;
};

// Square systems only.
std::optional<Eigen::VectorXd> newton(const PolySystem& sys, Eigen::VectorXd x,
                                      const NewtonConfig& cfg = {});

struct SubdivisionConfig {
  double newton_width = 1.0 / 64;  // relative to the starting box
  double min_width = 1e-9;
  long max_boxes = 400000;
  double dedupe = 1e-8;
  NewtonConfig newton;
  // Optional box filter; boxes for which it returns false are discarded.
  std::function<bool(const std::vector<Interval>&)> keep;
};

struct SubdivisionResult {
  std::vector<Eigen::VectorXd> roots;
  long boxes = 0;
  long unresolved = 0;  // boxes that reached min_width without a Newton root
  bool exhausted = false;
};

// All zeros of a square polynomial system in a box.
SubdivisionResult solve_subdivision(const PolySystem& sys, const std::vector<Interval>& box,
                                    const SubdivisionConfig& cfg = {});

// Unit null vector of the (n-1) x n Jacobian and its smallest nonzero singular
// value relative to the largest.
struct Tangent {
  Eigen::VectorXd dir;
  double conditioning;
};
Tangent curve_tangent(const PolySystem& sys, const Eigen::VectorXd& x);

enum class StepVerdict { Continue, StopKeep, StopDrop };

struct ContinuationConfig {
  double h0 = 1e-4;
  double hmax = 2e-3;
  double hmin = 1e-11;
  int max_steps = 20000;
  double min_cos = 0.95;  // tangent turn allowed per step
  NewtonConfig corrector{12, 1e-14, 1e-11};
};

struct PathResult {
  std::vector<Eigen::VectorXd> points;
  enum class End { Predicate, StepUnderflow, MaxSteps } end = End::Predicate;
};

// Pseudo-arclength continuation of a one-dimensional solution set from x0
// in the direction of dir.  `check` judges every accepted point; `cap`
// bounds the next step length.
PathResult continue_path(
    const PolySystem& sys, const Eigen::VectorXd& x0, const Eigen::VectorXd& dir,
    const ContinuationConfig& cfg,
    const std::function<StepVerdict(const Eigen::VectorXd&)>& check,
    const std::function<double(const Eigen::VectorXd&, const Eigen::VectorXd&)>& cap = {});

}  // namespace mink
