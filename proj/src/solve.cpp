#include "minkcurve/solve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace mink {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double powi(double x, int n) {
  double r = 1.0;
  for (int i = 0; i < n; ++i) r *= x;
  return r;
}

}  // namespace

CompiledPoly::CompiledPoly(const MPoly& p, int nvars) : nvars_(nvars) {
  for (const auto& [e, c] : p.terms) {
    for (int i = nvars; i < kMaxVars; ++i)
      if (e[i]) throw std::invalid_argument("polynomial uses more variables than the system");
    terms_.push_back({c, e});
  }
}

double CompiledPoly::eval(const double* x) const {
  double s = 0.0;
  for (const auto& t : terms_) {
    double m = t.c;
    for (int i = 0; i < nvars_; ++i) m *= powi(x[i], t.e[i]);
    s += m;
  }
  return s;
}

double CompiledPoly::magnitude(const double* x) const {
  double s = 0.0;
  for (const auto& t : terms_) {
    double m = std::fabs(t.c);
    for (int i = 0; i < nvars_; ++i) m *= powi(std::fabs(x[i]), t.e[i]);
    s += m;
  }
  return s;
}

Interval CompiledPoly::natural(const Interval* box) const {
  double lo = 0.0, hi = 0.0, mag = 0.0;
  for (const auto& t : terms_) {
    Interval v(t.c);
    double m = std::fabs(t.c);
    for (int i = 0; i < nvars_; ++i)
      if (t.e[i]) {
        v = v * ipow(box[i], t.e[i]);
        m *= powi(std::max(std::fabs(box[i].lo), std::fabs(box[i].hi)), t.e[i]);
      }
    lo += v.lo;
    hi += v.hi;
    mag += m;
  }
  double pad = 64 * kEps * mag + 1e-300;
  return {lo - pad, hi + pad};
}

PolySystem::PolySystem(const std::vector<MPoly>& eqs, int nvars) : nvars_(nvars) {
  for (const auto& p : eqs) {
    f_.emplace_back(p, nvars);
    std::vector<CompiledPoly> row;
    for (int j = 0; j < nvars; ++j) row.emplace_back(p.derivative(j), nvars);
    df_.push_back(std::move(row));
  }
}

Eigen::VectorXd PolySystem::eval(const Eigen::VectorXd& x) const {
  Eigen::VectorXd r(neq());
  for (int i = 0; i < neq(); ++i) r[i] = f_[i].eval(x.data());
  return r;
}

Eigen::MatrixXd PolySystem::jacobian(const Eigen::VectorXd& x) const {
  Eigen::MatrixXd j(neq(), nvars_);
  for (int i = 0; i < neq(); ++i)
    for (int k = 0; k < nvars_; ++k) j(i, k) = df_[i][k].eval(x.data());
  return j;
}

Eigen::VectorXd PolySystem::magnitudes(const Eigen::VectorXd& x) const {
  Eigen::VectorXd r(neq());
  for (int i = 0; i < neq(); ++i) r[i] = f_[i].magnitude(x.data());
  return r;
}

Interval PolySystem::enclose(int i, const Interval* box) const {
  Interval nat = f_[i].natural(box);
  double c[kMaxVars] = {0, 0, 0, 0};
  for (int k = 0; k < nvars_; ++k) c[k] = box[k].mid();
  double fc = f_[i].eval(c);
  double pad = 64 * kEps * f_[i].magnitude(c);
  Interval mv(fc - pad, fc + pad);
  for (int k = 0; k < nvars_; ++k) {
    if (box[k].width() == 0.0) continue;
    mv = mv + df_[i][k].natural(box) * Interval(box[k].lo - c[k], box[k].hi - c[k]);
  }
  Interval r = intersect(nat, mv);
  return r.lo > r.hi ? nat : r;
}

double PolySystem::scaled_residual(const Eigen::VectorXd& x) const {
  double m = 0.0;
  for (int i = 0; i < neq(); ++i)
    m = std::max(m, std::fabs(f_[i].eval(x.data())) / (1.0 + f_[i].magnitude(x.data())));
  return m;
}

std::optional<Eigen::VectorXd> newton(const PolySystem& sys, Eigen::VectorXd x,
                                      const NewtonConfig& cfg) {
  if (sys.neq() != sys.nvars()) throw std::invalid_argument("newton needs a square system");
  for (int it = 0; it < cfg.max_iter; ++it) {
    Eigen::VectorXd f = sys.eval(x);
    if (!f.allFinite()) return std::nullopt;
    Eigen::VectorXd mag = sys.magnitudes(x);
    bool small = true;
    for (int i = 0; i < f.size(); ++i)
      if (std::fabs(f[i]) > 4 * kEps * mag[i] + 1e-300) small = false;
    if (small) return x;
    Eigen::FullPivLU<Eigen::MatrixXd> lu(sys.jacobian(x));
    if (lu.rank() < sys.nvars()) return std::nullopt;
    Eigen::VectorXd dx = lu.solve(f);
    x -= dx;
    if (dx.lpNorm<Eigen::Infinity>() <= cfg.step_tol * (1.0 + x.lpNorm<Eigen::Infinity>())) {
      if (sys.scaled_residual(x) <= cfg.residual_tol) return x;
      return std::nullopt;
    }
  }
  if (sys.scaled_residual(x) <= cfg.residual_tol) return x;
  return std::nullopt;
}

namespace {

// Mean value form of J(c)^-1 F over the box; decorrelates nearly dependent
// equations that the componentwise test cannot separate.
bool preconditioned_excludes(const PolySystem& sys,
                             const std::vector<std::vector<CompiledPoly>>& jac,
                             const std::vector<Interval>& b) {
  const int n = sys.nvars();
  Eigen::VectorXd c(n);
  for (int k = 0; k < n; ++k) c[k] = b[k].mid();
  Eigen::FullPivLU<Eigen::MatrixXd> lu(sys.jacobian(c));
  if (lu.rank() < n) return false;
  Eigen::MatrixXd A = lu.inverse();
  Eigen::VectorXd f = sys.eval(c), mag = sys.magnitudes(c);
  std::vector<std::vector<Interval>> J(n, std::vector<Interval>(n));
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) J[j][k] = jac[j][k].natural(b.data());
  for (int i = 0; i < n; ++i) {
    double mid = 0.0, rad = 0.0;
    for (int j = 0; j < n; ++j) {
      mid += A(i, j) * f[j];
      rad += std::fabs(A(i, j)) * 64 * kEps * mag[j];
    }
    Interval g(mid - rad, mid + rad);
    for (int k = 0; k < n; ++k) {
      Interval row(0.0);
      for (int j = 0; j < n; ++j) row = row + Interval(A(i, j)) * J[j][k];
      g = g + row * Interval(b[k].lo - c[k], b[k].hi - c[k]);
    }
    double slack = 1e-12 * (std::fabs(g.lo) + std::fabs(g.hi));
    if (g.lo > slack || g.hi < -slack) return true;
  }
  return false;
}

}  // namespace

SubdivisionResult solve_subdivision(const PolySystem& sys, const std::vector<Interval>& box,
                                    const SubdivisionConfig& cfg) {
  const int n = sys.nvars();
  if (static_cast<int>(box.size()) != n) throw std::invalid_argument("box dimension mismatch");
  std::vector<double> w0(n);
  for (int k = 0; k < n; ++k) w0[k] = std::max(box[k].width(), 1e-300);

  SubdivisionResult res;
  const auto& jac = sys.partials();
  std::vector<std::vector<Interval>> stack{box};
  auto known = [&](const Eigen::VectorXd& x) {
    for (const auto& r : res.roots) {
      double d = 0.0;
      for (int k = 0; k < n; ++k) d = std::max(d, std::fabs(r[k] - x[k]) / w0[k]);
      if (d <= cfg.dedupe) return true;
    }
    return false;
  };
  auto inside = [&](const Eigen::VectorXd& x, const std::vector<Interval>& b, double grow) {
    for (int k = 0; k < n; ++k) {
      double g = grow * b[k].width();
      if (x[k] < b[k].lo - g || x[k] > b[k].hi + g) return false;
      if (x[k] < box[k].lo || x[k] > box[k].hi) return false;
    }
    return true;
  };

  while (!stack.empty()) {
    if (++res.boxes > cfg.max_boxes) {
      res.exhausted = true;
      break;
    }
    std::vector<Interval> b = std::move(stack.back());
    stack.pop_back();
    if (cfg.keep && !cfg.keep(b)) continue;
    bool excluded = false;
    for (int i = 0; i < sys.neq() && !excluded; ++i) {
      Interval v = sys.enclose(i, b.data());
      if (v.lo > 0.0 || v.hi < 0.0) excluded = true;
    }
    if (excluded) continue;
    if (sys.neq() == n && preconditioned_excludes(sys, jac, b)) continue;

    double rel = 0.0;
    int split = 0;
    for (int k = 0; k < n; ++k) {
      double r = b[k].width() / w0[k];
      if (r > rel) {
        rel = r;
        split = k;
      }
    }
    if (rel <= cfg.newton_width) {
      Eigen::VectorXd c(n);
      for (int k = 0; k < n; ++k) c[k] = b[k].mid();
      if (auto x = newton(sys, c, cfg.newton)) {
        if (inside(*x, b, 0.05)) {
          if (!known(*x)) res.roots.push_back(*x);
          continue;
        }
      }
    }
    if (rel <= cfg.min_width) {
      ++res.unresolved;
      continue;
    }
    double m = b[split].mid();
    std::vector<Interval> lo = b, hi = b;
    lo[split].hi = m;
    hi[split].lo = m;
    stack.push_back(std::move(hi));
    stack.push_back(std::move(lo));
  }
  std::sort(res.roots.begin(), res.roots.end(), [](const auto& a, const auto& b) {
    return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(),
                                        b.data() + b.size());
  });
  return res;
}

Tangent curve_tangent(const PolySystem& sys, const Eigen::VectorXd& x) {
  Eigen::MatrixXd j = sys.jacobian(x);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(j, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  Tangent t;
  t.dir = svd.matrixV().col(sys.nvars() - 1);
  t.conditioning = s.size() && s[0] > 0 ? s[s.size() - 1] / s[0] : 0.0;
  return t;
}

PathResult continue_path(
    const PolySystem& sys, const Eigen::VectorXd& x0, const Eigen::VectorXd& dir,
    const ContinuationConfig& cfg,
    const std::function<StepVerdict(const Eigen::VectorXd&)>& check,
    const std::function<double(const Eigen::VectorXd&, const Eigen::VectorXd&)>& cap) {
  const int n = sys.nvars();
  if (sys.neq() != n - 1) throw std::invalid_argument("continuation needs n-1 equations");
  PathResult out;
  Eigen::VectorXd x = x0;
  Eigen::VectorXd tau = curve_tangent(sys, x).dir;
  if (tau.dot(dir) < 0) tau = -tau;
  double h = cfg.h0;

  for (int step = 0; step < cfg.max_steps; ++step) {
    double hc = cfg.hmax;
    if (cap) hc = std::min(hc, cap(x, tau));
    h = std::min(h, hc);
    bool accepted = false;
    Eigen::VectorXd xn, tn;
    int iters = 0;
    while (h >= cfg.hmin) {
      Eigen::VectorXd xp = x + h * tau;
      xn = xp;
      bool ok = false;
      for (iters = 0; iters < cfg.corrector.max_iter; ++iters) {
        Eigen::MatrixXd a(n, n);
        Eigen::VectorXd r(n);
        a.topRows(n - 1) = sys.jacobian(xn);
        a.row(n - 1) = tau.transpose();
        r.head(n - 1) = sys.eval(xn);
        r[n - 1] = tau.dot(xn - xp);
        Eigen::VectorXd dx = a.fullPivLu().solve(r);
        if (!dx.allFinite()) break;
        xn -= dx;
        if (dx.lpNorm<Eigen::Infinity>() <= 1e-13 * (1.0 + xn.lpNorm<Eigen::Infinity>())) {
          ok = sys.scaled_residual(xn) <= cfg.corrector.residual_tol;
          break;
        }
      }
      if (ok) {
        tn = curve_tangent(sys, xn).dir;
        if (tn.dot(tau) < 0) tn = -tn;
        if (tn.dot(tau) >= cfg.min_cos) {
          accepted = true;
          break;
        }
      }
      h *= 0.5;
    }
    if (!accepted) {
      out.end = PathResult::End::StepUnderflow;
      return out;
    }
    StepVerdict v = check(xn);
    if (v == StepVerdict::StopDrop) return out;
    out.points.push_back(xn);
    if (v == StepVerdict::StopKeep) return out;
    x = xn;
    tau = tn;
    if (iters <= 3) h *= 1.5;
  }
  out.end = PathResult::End::MaxSteps;
  return out;
}

}  // namespace mink
