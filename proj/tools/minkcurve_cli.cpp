#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "minkcurve/acceptance.hpp"
#include "minkcurve/caustic.hpp"
#include "minkcurve/exact.hpp"
#include "minkcurve/io.hpp"

using namespace mink;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_all(const std::string& path) {
  if (path == "-") {
    std::stringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Written to a sibling temporary first, then renamed into place.
void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::fwrite(text.data(), 1, text.size(), stdout);
    return;
  }
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw UsageError("cannot write '" + path + "'");
    out << text;
  }
  std::filesystem::rename(tmp, path);
}

void error_json(const std::string& type, const std::string& msg, long offset = -1) {
  Json e{{"error", {{"type", type}, {"message", msg}}}};
  if (offset >= 0) e["error"]["offset"] = offset;
  std::cerr << e.dump() << "\n";
}

template <class T>
void take(const Json& j, const char* key, T& v) {
  if (j.contains(key)) v = j[key].get<T>();
}

void seed_detect(const Json& j, DetectConfig& d) {
  take(j, "grid", d.grid);
  take(j, "tol_t", d.tol_t);
  take(j, "f_tol", d.f_tol);
  take(j, "merge_radius", d.merge_radius);
  take(j, "rel_zero", d.rel_zero);
  take(j, "jet_order", d.jet_order);
  take(j, "lightlike_tol", d.lightlike_tol);
  take(j, "derivative_depth", d.derivative_depth);
}

void seed_trace(const Json& j, TraceConfig& t) {
  take(j, "box", t.box);
  take(j, "ring", t.ring);
  take(j, "origin_stop", t.origin_stop);
  take(j, "separation", t.separation);
  take(j, "step_max", t.step_max);
  take(j, "step_rel", t.step_rel);
  take(j, "fit_lo", t.fit_lo);
  take(j, "fit_hi", t.fit_hi);
  take(j, "singular_tol", t.singular_tol);
  take(j, "boundary_seeds", t.boundary_seeds);
}

struct Options {
  // curve selection
  std::string model, spec_path;
  double s1 = 0.0, s2 = 0.0;
  std::vector<double> window;
  std::string out;
  std::string seed_config;

  DetectConfig detect;
  SelfIntersectionConfig crossings;
  CausticConfig caustic;
  TraceConfig trace;

  std::string svg;
  double line_extent = 1.0;
  std::string stratum, polylines;
  double sweep_lo = -0.05, sweep_hi = 0.05;
  int sweep_n = 41;
  std::string suite = "acceptance";
  int kmax = 5;
  std::vector<int> criteria;
  bool verbose = false;
  AcceptanceConfig acc;
};

void apply_seed(Options& o) {
  if (o.seed_config.empty()) return;
  Json j = Json::parse(read_all(o.seed_config));
  if (j.contains("detect")) seed_detect(j["detect"], o.detect);
  if (j.contains("crossings")) {
    take(j["crossings"], "separation", o.crossings.separation);
    take(j["crossings"], "tangency_tol", o.crossings.tangency_tol);
    take(j["crossings"], "point_tol", o.crossings.point_tol);
  }
  if (j.contains("caustic")) {
    const Json& c = j["caustic"];
    take(c, "initial_samples", o.caustic.initial_samples);
    take(c, "max_step", o.caustic.max_step);
    take(c, "max_refine", o.caustic.max_refine);
    take(c, "box", o.caustic.box);
    take(c, "gap", o.caustic.gap);
  }
  if (j.contains("trace")) seed_trace(j["trace"], o.trace);
  if (j.contains("sweep")) {
    take(j["sweep"], "lo", o.sweep_lo);
    take(j["sweep"], "hi", o.sweep_hi);
    take(j["sweep"], "n", o.sweep_n);
  }
  if (j.contains("acceptance")) {
    const Json& a = j["acceptance"];
    take(a, "sweep_n", o.acc.sweep_n);
    take(a, "sweep_box", o.acc.sweep_box);
    take(a, "li_kmax", o.acc.li_kmax);
    take(a, "random_curves", o.acc.random_curves);
    take(a, "seed", o.acc.seed);
    take(a, "parallel", o.acc.parallel);
  }
}

void add_curve_opts(CLI::App* c, Options& o) {
  c->add_option("--model", o.model, "built-in family: I2 I3 LI LI2 C LC RC V2");
  c->add_option("--s1", o.s1, "first family parameter")->capture_default_str();
  c->add_option("--s2", o.s2, "second family parameter")->capture_default_str();
  c->add_option("--window", o.window, "parameter window tmin tmax")->expected(2);
  c->add_option("--spec", o.spec_path, "curve spec JSON file, '-' for stdin");
}

void add_detect_opts(CLI::App* c, Options& o) {
  c->add_option("--grid", o.detect.grid, "root isolation grid")->capture_default_str();
  c->add_option("--jet-order", o.detect.jet_order, "Taylor jet order")->capture_default_str();
  c->add_option("--lightlike-tol", o.detect.lightlike_tol, "relative lightlike tolerance")->capture_default_str();
  c->add_option("--merge-radius", o.detect.merge_radius, "root merge radius")->capture_default_str();
  c->add_option("--rel-zero", o.detect.rel_zero, "relative zero for multiplicities")->capture_default_str();
  c->add_option("--separation", o.crossings.separation, "minimum t2 - t1 for crossings")->capture_default_str();
  c->add_option("--tangency-tol", o.crossings.tangency_tol, "tangential crossing tolerance")->capture_default_str();
}

void add_trace_opts(CLI::App* c, Options& o) {
  c->add_option("--box", o.trace.box, "parameter half-width")->capture_default_str();
  c->add_option("--ring", o.trace.ring, "seeding square half-size")->capture_default_str();
  c->add_option("--step-max", o.trace.step_max, "continuation step cap")->capture_default_str();
  c->add_option("--fit-lo", o.trace.fit_lo, "fit window start")->capture_default_str();
  c->add_option("--fit-hi", o.trace.fit_hi, "fit window end")->capture_default_str();
  c->add_option("--strata-separation", o.trace.separation, "minimum |t1 - t2| on bi-local strata")
      ->capture_default_str();
}

CurveSpec curve_spec(const Options& o) {
  CurveSpec s;
  if (!o.spec_path.empty()) {
    if (!o.model.empty()) throw UsageError("--spec and --model are exclusive");
    s = curve_spec_from_json(Json::parse(read_all(o.spec_path)));
  } else {
    if (o.model.empty()) throw UsageError("give --model or --spec");
    s.model = o.model;
    model_family(o.model);
    s.s1 = o.s1;
    s.s2 = o.s2;
  }
  if (!o.window.empty()) {
    if (!(o.window[0] < o.window[1])) throw UsageError("empty window");
    s.window_lo = o.window[0];
    s.window_hi = o.window[1];
    s.window_given = true;
  }
  if (o.spec_path.empty()) {
    s.detect = o.detect;
    s.jet_order = o.detect.jet_order;
    s.crossings = o.crossings;
  }
  return s;
}

int cmd_analyze(const Options& o) {
  CurveSpec s = curve_spec(o);
  ParamFamily f = s.family();
  auto a = analyze_curve(s.curve(), f.window_lo, f.window_hi, s.detect, s.crossings);
  emit(to_json(make_record(s, a)).dump(2) + "\n", o.out);
  return 0;
}

int cmd_caustic(const Options& o) {
  CurveSpec s = curve_spec(o);
  ParamFamily f = s.family();
  PolyCurve c = s.curve();
  CausticConfig cc = o.caustic;
  cc.detect = s.detect;
  auto br = caustic(c, f.window_lo, f.window_hi, cc);
  emit(caustic_csv(br, o.line_extent), o.out);
  if (!o.svg.empty()) {
    auto cen = find_special_points(c, f.window_lo, f.window_hi, s.detect);
    emit(curve_svg(c, f.window_lo, f.window_hi, cen, br), o.svg);
  }
  return 0;
}

int cmd_strata(const Options& o) {
  if (o.model.empty()) throw UsageError("strata needs --model");
  ParamFamily f = model_family(o.model);
  std::vector<StratumTrace> traces;
  if (o.stratum.empty()) {
    traces = trace_all(f, o.trace);
  } else {
    traces.push_back(trace_stratum(f, StratumId::parse(o.stratum), o.trace));
  }
  if (!o.polylines.empty()) emit(strata_csv(traces), o.polylines);
  emit(fits_csv(traces), o.out);
  return 0;
}

int cmd_sweep(const Options& o) {
  if (o.model.empty()) throw UsageError("sweep needs --model");
  if (o.sweep_n < 2) throw UsageError("--n must be at least 2");
  ParamFamily f = model_family(o.model);
  emit(sweep_csv(census_sweep(f, o.sweep_lo, o.sweep_hi, o.sweep_n, o.detect)), o.out);
  return 0;
}

int cmd_verify(const Options& o) {
  std::ostringstream os;
  bool ok = true;
  if (o.suite == "li-subset-v") {
    for (const auto& r : verify_li_subset_v(o.kmax)) {
      os << (r.pass() ? "[PASS]" : "[FAIL]") << " k=" << r.k << " g^(2k)(0)=" << r.g2k.str()
         << " expected " << r.expected.str() << "\n";
      ok = ok && r.pass();
    }
  } else if (o.suite == "acceptance") {
    AcceptanceConfig acc = o.acc;
    acc.detect = o.detect;
    acc.trace = o.trace;
    for (const auto& r : run_acceptance(o.criteria, acc)) {
      os << r.line() << "\n";
      if (o.verbose || !r.pass)
        for (const auto& d : r.details) os << "    " << d << "\n";
      ok = ok && r.pass;
    }
  } else {
    throw UsageError("unknown suite '" + o.suite + "'");
  }
  emit(os.str(), o.out);
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Minkowski-plane curve geometry: special points, caustics, strata"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--seed-config", o.seed_config, "JSON overriding any configuration")->check(CLI::ExistingFile);

  auto* analyze = app.add_subcommand("analyze", "census of special points as JSON");
  add_curve_opts(analyze, o);
  add_detect_opts(analyze, o);
  analyze->add_option("--out", o.out, "output file");

  auto* caus = app.add_subcommand("caustic", "caustic branches as CSV, optional SVG");
  add_curve_opts(caus, o);
  add_detect_opts(caus, o);
  caus->add_option("--svg", o.svg, "also write an SVG picture");
  caus->add_option("--out", o.out, "CSV output file");
  caus->add_option("--samples", o.caustic.initial_samples, "initial samples")->capture_default_str();
  caus->add_option("--max-step", o.caustic.max_step, "image step cap")->capture_default_str();
  caus->add_option("--clip", o.caustic.box, "samples beyond this are asymptotic")->capture_default_str();
  caus->add_option("--line-extent", o.line_extent, "half-length of emitted line components")
      ->capture_default_str();

  auto* strata = app.add_subcommand("strata", "traced strata and power-law fits");
  strata->add_option("--model", o.model, "two-parameter family")->required();
  strata->add_option("--stratum", o.stratum, "e.g. Tc, V(2), LI-; all if omitted");
  strata->add_option("--polylines", o.polylines, "write traced polylines CSV here");
  strata->add_option("--out", o.out, "fit table output file");
  add_trace_opts(strata, o);

  auto* sweep = app.add_subcommand("sweep", "feature strings on a parameter grid");
  sweep->add_option("--model", o.model, "family")->required();
  sweep->add_option("--lo", o.sweep_lo, "grid start")->capture_default_str();
  sweep->add_option("--hi", o.sweep_hi, "grid end")->capture_default_str();
  sweep->add_option("--n", o.sweep_n, "points per axis")->capture_default_str();
  sweep->add_option("--out", o.out, "output file");
  add_detect_opts(sweep, o);

  auto* verify = app.add_subcommand("verify", "acceptance checks; exit 0 iff all pass");
  verify->add_option("--suite", o.suite, "acceptance or li-subset-v")->capture_default_str();
  verify->add_option("--kmax", o.kmax, "largest k for li-subset-v")->capture_default_str();
  verify->add_option("--criteria", o.criteria, "criterion ids, default all");
  verify->add_flag("-v,--verbose", o.verbose, "print every check");
  verify->add_option("--out", o.out, "output file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    error_json("usage", e.what());
    return 2;
  }

  try {
    apply_seed(o);
    if (*analyze) return cmd_analyze(o);
    if (*caus) return cmd_caustic(o);
    if (*strata) return cmd_strata(o);
    if (*sweep) return cmd_sweep(o);
    if (*verify) return cmd_verify(o);
  } catch (const ParseError& e) {
    error_json("parse", e.what(), static_cast<long>(e.offset));
    return 2;
  } catch (const Json::exception& e) {
    error_json("json", e.what());
    return 2;
  } catch (const UsageError& e) {
    error_json("usage", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    error_json("invalid_argument", e.what());
    return 2;
  } catch (const std::exception& e) {
    error_json("runtime", e.what());
    return 3;
  }
  return 0;
}
