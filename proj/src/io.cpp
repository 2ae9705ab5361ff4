#include "minkcurve/io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <sstream>

namespace mink {

ParseError::ParseError(const std::string& msg, std::size_t off)
    : std::runtime_error(msg + " at offset " + std::to_string(off)), offset(off) {}

namespace {

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  MPoly run() {
    MPoly p = expr();
    skip();
    if (i_ != s_.size()) fail("unexpected character '" + std::string(1, s_[i_]) + "'");
    return p;
  }

 private:
  const std::string& s_;
  std::size_t i_ = 0;
  int depth_ = 0;

  [[noreturn]] void fail(const std::string& m) const { throw ParseError(m, i_); }

  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool peek(char c) {
    skip();
    return i_ < s_.size() && s_[i_] == c;
  }

  MPoly expr() {
    MPoly p = term();
    while (true) {
      if (peek('+')) {
        ++i_;
        p += term();
      } else if (peek('-')) {
        ++i_;
        p -= term();
      } else {
        return p;
      }
    }
  }

  MPoly term() {
    MPoly p = factor();
    while (peek('*')) {
      ++i_;
      p = p * factor();
    }
    skip();
    if (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '('))
      fail("implicit multiplication is not allowed");
    return p;
  }

  MPoly factor() {
    if (peek('-')) {
      ++i_;
      return -factor();
    }
    MPoly b = base();
    if (peek('^')) {
      ++i_;
      skip();
      if (i_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[i_])))
        fail("expected unsigned integer exponent");
      unsigned long n = 0;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) {
        n = n * 10 + static_cast<unsigned long>(s_[i_] - '0');
        if (n > 64) fail("exponent too large");
        ++i_;
      }
      return pow(b, static_cast<int>(n));
    }
    return b;
  }

  double digits(std::string* out) {
    std::size_t st = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    *out = s_.substr(st, i_ - st);
    return 0.0;
  }

  MPoly number() {
    std::size_t st = i_;
    std::string a;
    digits(&a);
    if (i_ < s_.size() && s_[i_] == '.') {
      ++i_;
      std::string f;
      digits(&f);
      if (a.empty() && f.empty()) {
        i_ = st;
        fail("malformed number");
      }
      return MPoly::constant(std::strtod(s_.substr(st, i_ - st).c_str(), nullptr));
    }
    if (i_ < s_.size() && s_[i_] == '/') {
      ++i_;
      std::string q;
      digits(&q);
      if (q.empty()) fail("expected denominator");
      double den = std::strtod(q.c_str(), nullptr);
      if (den == 0.0) {
        i_ -= q.size();
        fail("zero denominator");
      }
      return MPoly::constant(std::strtod(a.c_str(), nullptr) / den);
    }
    return MPoly::constant(std::strtod(a.c_str(), nullptr));
  }

  MPoly base() {
    skip();
    if (i_ >= s_.size()) fail("unexpected end of input");
    char c = s_[i_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (c == '(') {
      if (++depth_ > 200) fail("nesting too deep");
      ++i_;
      MPoly p = expr();
      if (!peek(')')) fail("expected ')'");
      ++i_;
      --depth_;
      return p;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t st = i_;
      while (i_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[i_]))) ++i_;
      std::string id = s_.substr(st, i_ - st);
      if (id == "t") return MPoly::var(0);
      if (id == "s1") return MPoly::var(1);
      if (id == "s2") return MPoly::var(2);
      i_ = st;
      fail("unknown identifier '" + id + "'");
    }
    fail("unexpected character '" + std::string(1, c) + "'");
  }
};

double num(const Json& j, const char* key, double dflt) {
  if (!j.contains(key)) return dflt;
  if (!j[key].is_number()) throw std::invalid_argument(std::string("'") + key + "' must be a number");
  return j[key].get<double>();
}

Json point_json(const SpecialPoint& p) {
  Json o;
  o["t"] = canon(p.t);
  o["kind"] = to_string(p.kind);
  o["token"] = p.token();
  o["order"] = p.order;
  o["order_saturated"] = p.order_saturated;
  o["direction"] = to_string(p.direction);
  o["cusp"] = p.kind == PointKind::Cusp ? Json(to_string(p.cusp)) : Json(nullptr);
  Json r = Json::object();
  for (const auto& [k, v] : p.residuals) r[k] = canon(v);
  o["residuals"] = r;
  return o;
}

template <class E, std::size_t N>
E enum_from(const std::string& s, const E (&all)[N], const char* what) {
  for (E e : all)
    if (s == to_string(e)) return e;
  throw std::invalid_argument(std::string("unknown ") + what + " '" + s + "'");
}

std::string csv_num(double v) { return fmt12(v); }

}  // namespace

MPoly parse_expr(const std::string& text) { return Parser(text).run(); }

double canon(double v) {
  if (!std::isfinite(v)) return v;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  double r = std::strtod(buf, nullptr);
  return r == 0.0 ? 0.0 : r;
}

std::string fmt12(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v == 0.0 ? 0.0 : v);
  return buf;
}

ParamFamily CurveSpec::family() const {
  if (model) {
    ParamFamily f = model_family(*model);
    if (window_given) {
      f.window_lo = window_lo;
      f.window_hi = window_hi;
    }
    return f;
  }
  ParamFamily f;
  f.name = "custom";
  f.singularity = "";
  f.x = parse_expr(x_text);
  f.y = parse_expr(y_text);
  f.arity = (f.x.degree_in(2) > 0 || f.y.degree_in(2) > 0) ? 2 : 1;
  f.window_lo = window_lo;
  f.window_hi = window_hi;
  return f;
}

PolyCurve CurveSpec::curve() const { return family().at(s1, s2); }

Json CurveSpec::echo() const {
  Json o;
  if (model) {
    o["model"] = *model;
  } else {
    o["x"] = x_text;
    o["y"] = y_text;
  }
  o["params"] = {{"s1", canon(s1)}, {"s2", canon(s2)}};
  ParamFamily f = family();
  o["window"] = {canon(f.window_lo), canon(f.window_hi)};
  o["jet_order"] = jet_order;
  o["tolerances"] = {{"lightlike", canon(detect.lightlike_tol)},
                     {"merge_radius", canon(detect.merge_radius)},
                     {"rel_zero", canon(detect.rel_zero)},
                     {"grid", detect.grid},
                     {"separation", canon(crossings.separation)},
                     {"tangency", canon(crossings.tangency_tol)}};
  return o;
}

CurveSpec curve_spec_from_json(const Json& j) {
  if (!j.is_object()) throw std::invalid_argument("curve spec must be a JSON object");
  CurveSpec s;
  bool has_model = j.contains("model");
  bool has_xy = j.contains("x") || j.contains("y");
  if (has_model == has_xy) throw std::invalid_argument("give either 'model' or both 'x' and 'y'");
  if (has_model) {
    s.model = j["model"].get<std::string>();
    model_family(*s.model);  // throws on unknown names
  } else {
    if (!j.contains("x") || !j.contains("y")) throw std::invalid_argument("both 'x' and 'y' are required");
    s.x_text = j["x"].get<std::string>();
    s.y_text = j["y"].get<std::string>();
    parse_expr(s.x_text);
    parse_expr(s.y_text);
  }
  if (j.contains("params")) {
    const Json& p = j["params"];
    s.s1 = num(p, "s1", 0.0);
    s.s2 = num(p, "s2", 0.0);
  }
  if (j.contains("window")) {
    const Json& w = j["window"];
    if (!w.is_array() || w.size() != 2) throw std::invalid_argument("'window' must be [tmin, tmax]");
    s.window_lo = w[0].get<double>();
    s.window_hi = w[1].get<double>();
    if (!(s.window_lo < s.window_hi)) throw std::invalid_argument("empty window");
    s.window_given = true;
  }
  if (j.contains("jet_order")) {
    s.jet_order = j["jet_order"].get<int>();
    if (s.jet_order < 4 || s.jet_order > 30) throw std::invalid_argument("jet_order must be in [4, 30]");
    s.detect.jet_order = s.jet_order;
  }
  if (j.contains("tolerances")) {
    const Json& t = j["tolerances"];
    s.detect.lightlike_tol = num(t, "lightlike", s.detect.lightlike_tol);
    s.detect.merge_radius = num(t, "merge_radius", s.detect.merge_radius);
    s.detect.rel_zero = num(t, "rel_zero", s.detect.rel_zero);
    s.detect.grid = static_cast<int>(num(t, "grid", s.detect.grid));
    s.crossings.separation = num(t, "separation", s.crossings.separation);
    s.crossings.tangency_tol = num(t, "tangency", s.crossings.tangency_tol);
  }
  return s;
}

CensusRecord make_record(const CurveSpec& spec, const Analysis& a) {
  CensusRecord r;
  r.input = spec.echo();
  r.census = a.census;
  r.features = a.features;
  return r;
}

Json to_json(const CensusRecord& r) {
  Json o;
  o["input"] = r.input;
  o["window"] = {canon(r.census.a), canon(r.census.b)};
  Json pts = Json::array();
  for (const auto& p : r.census.points) pts.push_back(point_json(p));
  o["points"] = pts;
  Json xs = Json::array();
  for (const auto& x : r.census.self_intersections) {
    xs.push_back({{"t1", canon(x.t1)},
                  {"t2", canon(x.t2)},
                  {"point", {canon(x.point.x), canon(x.point.y)}},
                  {"tangential", x.tangential},
                  {"tangency_residual", canon(x.tangency_residual)}});
  }
  o["self_intersections"] = xs;
  o["features"] = r.features;
  return o;
}

CensusRecord record_from_json(const Json& j) {
  static const PointKind kinds[] = {PointKind::Lightlike, PointKind::Inflection, PointKind::Vertex,
                                    PointKind::LightlikeInflection, PointKind::Cusp};
  static const VertexDir dirs[] = {VertexDir::Inward, VertexDir::Outward, VertexDir::Undefined};
  static const CuspKind cusps[] = {CuspKind::Ordinary, CuspKind::LightlikeOrdinary,
                                   CuspKind::Ramphoid, CuspKind::Other};
  CensusRecord r;
  r.input = j.at("input");
  r.census.a = j.at("window").at(0).get<double>();
  r.census.b = j.at("window").at(1).get<double>();
  for (const auto& p : j.at("points")) {
    SpecialPoint sp;
    sp.t = p.at("t").get<double>();
    sp.kind = enum_from(p.at("kind").get<std::string>(), kinds, "kind");
    sp.order = p.at("order").get<int>();
    sp.order_saturated = p.at("order_saturated").get<bool>();
    sp.direction = enum_from(p.at("direction").get<std::string>(), dirs, "direction");
    if (!p.at("cusp").is_null()) sp.cusp = enum_from(p.at("cusp").get<std::string>(), cusps, "cusp");
    for (const auto& [k, v] : p.at("residuals").items()) sp.residuals.emplace_back(k, v.get<double>());
    r.census.points.push_back(sp);
  }
  for (const auto& x : j.at("self_intersections")) {
    SelfIntersection si;
    si.t1 = x.at("t1").get<double>();
    si.t2 = x.at("t2").get<double>();
    si.point = {x.at("point").at(0).get<double>(), x.at("point").at(1).get<double>()};
    si.tangential = x.at("tangential").get<bool>();
    si.tangency_residual = x.at("tangency_residual").get<double>();
    r.census.self_intersections.push_back(si);
  }
  r.features = j.at("features").get<std::string>();
  return r;
}

std::string features_from_record(const CensusRecord& r) {
  return order_features(r.census, r.census.self_intersections);
}

std::string caustic_csv(const std::vector<CausticBranch>& branches, double line_extent) {
  std::ostringstream os;
  os << "branch_id,t,x,y,kind\n";
  for (std::size_t b = 0; b < branches.size(); ++b) {
    const auto& br = branches[b];
    if (br.kind == BranchKind::Line) {
      double n = std::hypot(br.direction.x, br.direction.y);
      Vec2 d = n > 0 ? (1.0 / n) * br.direction : Vec2{0, 0};
      for (double s : {-line_extent, line_extent}) {
        Vec2 p = br.point + s * d;
        os << b << ',' << csv_num(br.t0) << ',' << csv_num(p.x) << ',' << csv_num(p.y) << ",line\n";
      }
      continue;
    }
    for (const auto& s : br.samples) {
      os << b << ',' << csv_num(s.t) << ',' << csv_num(s.p.x) << ',' << csv_num(s.p.y) << ','
         << (s.asymptotic ? "asymptotic" : "branch") << '\n';
    }
  }
  return os.str();
}

namespace {

struct Extent {
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  void add(Vec2 p) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) return;
    x0 = std::min(x0, p.x);
    x1 = std::max(x1, p.x);
    y0 = std::min(y0, p.y);
    y1 = std::max(y1, p.y);
  }
};

std::string star(Vec2 c, double r) {
  std::ostringstream os;
  for (int k = 0; k < 10; ++k) {
    double a = M_PI / 2 + k * M_PI / 5;
    double rr = k % 2 ? 0.4 * r : r;
    os << (k ? " " : "") << fmt12(c.x + rr * std::cos(a)) << ',' << fmt12(c.y - rr * std::sin(a));
  }
  return os.str();
}

}  // namespace

std::string curve_svg(const PolyCurve& c, double a, double b, const Census& census,
                      const std::vector<CausticBranch>& branches, int samples) {
  // SVG y grows downward, so every y is negated.
  auto flip = [](Vec2 p) { return Vec2{p.x, -p.y}; };
  std::vector<Vec2> curve;
  Extent ext;
  for (int i = 0; i <= samples; ++i) {
    Vec2 p = flip(c.point(a + (b - a) * i / samples));
    curve.push_back(p);
    ext.add(p);
  }
  std::vector<std::vector<Vec2>> paths;
  for (const auto& br : branches) {
    std::vector<Vec2> pts;
    if (br.kind == BranchKind::Line) {
      double n = std::hypot(br.direction.x, br.direction.y);
      double L = std::max(ext.x1 - ext.x0, ext.y1 - ext.y0);
      Vec2 d = n > 0 ? (L / n) * br.direction : Vec2{0, 0};
      pts = {flip(br.point - d), flip(br.point + d)};
    } else {
      for (const auto& s : br.samples)
        if (!s.asymptotic) pts.push_back(flip(s.p));
      for (auto p : pts) ext.add(p);
    }
    paths.push_back(pts);
  }
  double w = std::max(ext.x1 - ext.x0, 1e-12), h = std::max(ext.y1 - ext.y0, 1e-12);
  double mx = 0.05 * w, my = 0.05 * h;
  double vx = ext.x0 - mx, vy = ext.y0 - my, vw = w + 2 * mx, vh = h + 2 * my;
  double r = 0.01 * std::max(vw, vh);
  double sw = 0.003 * std::max(vw, vh);

  auto path_d = [](const std::vector<Vec2>& pts) {
    std::ostringstream os;
    for (std::size_t i = 0; i < pts.size(); ++i)
      os << (i ? " L" : "M") << fmt12(pts[i].x) << ',' << fmt12(pts[i].y);
    return os.str();
  };

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << fmt12(vx) << ' ' << fmt12(vy) << ' '
     << fmt12(vw) << ' ' << fmt12(vh) << "\">\n"
     << "<style>.curve{fill:none;stroke:#000;stroke-width:" << fmt12(sw)
     << "}.caustic{fill:none;stroke:#c33;stroke-width:" << fmt12(sw)
     << "}.marker{fill:#06c;stroke:none}</style>\n";
  os << "<path class=\"curve\" d=\"" << path_d(curve) << "\"/>\n";
  for (const auto& p : paths)
    if (p.size() >= 2) os << "<path class=\"caustic\" d=\"" << path_d(p) << "\"/>\n";
  for (const auto& sp : census.points) {
    Vec2 q = flip(c.point(sp.t));
    std::string cls = std::string("marker ") + to_string(sp.kind);
    switch (sp.kind) {
      case PointKind::Vertex:
        os << "<circle class=\"" << cls << "\" cx=\"" << fmt12(q.x) << "\" cy=\"" << fmt12(q.y)
           << "\" r=\"" << fmt12(r) << "\"/>\n";
        break;
      case PointKind::Inflection:
        os << "<rect class=\"" << cls << "\" x=\"" << fmt12(q.x - r) << "\" y=\"" << fmt12(q.y - r)
           << "\" width=\"" << fmt12(2 * r) << "\" height=\"" << fmt12(2 * r) << "\"/>\n";
        break;
      case PointKind::Lightlike:
      case PointKind::LightlikeInflection:
        os << "<polygon class=\"" << cls << "\" points=\"" << star(q, 1.5 * r) << "\"/>\n";
        break;
      case PointKind::Cusp:
        os << "<polygon class=\"" << cls << "\" points=\"" << fmt12(q.x) << ',' << fmt12(q.y - r)
           << ' ' << fmt12(q.x + r) << ',' << fmt12(q.y) << ' ' << fmt12(q.x) << ','
           << fmt12(q.y + r) << ' ' << fmt12(q.x - r) << ',' << fmt12(q.y) << "\"/>\n";
        break;
    }
  }
  os << "</svg>\n";
  return os.str();
}

std::string strata_csv(const std::vector<StratumTrace>& traces) {
  std::ostringstream os;
  os << "stratum,curve_id,index,s1,s2,through_origin\n";
  for (const auto& tr : traces) {
    std::string name = tr.stratum.name();
    for (std::size_t c = 0; c < tr.curves.size(); ++c) {
      const auto& cv = tr.curves[c];
      for (std::size_t i = 0; i < cv.s.size(); ++i)
        os << name << ',' << c << ',' << i << ',' << csv_num(cv.s[i][0]) << ','
           << csv_num(cv.s[i][1]) << ',' << (cv.through_origin ? 1 : 0) << '\n';
    }
    for (std::size_t i = 0; i < tr.points.size(); ++i)
      os << name << ",0," << i << ',' << csv_num(tr.points[i].s) << ",0,0\n";
  }
  return os.str();
}

std::string fits_csv(const std::vector<StratumTrace>& traces) {
  std::ostringstream os;
  os << "stratum,model,exponent,exponent_fit,coefficient,residual,leading_residual,rays\n";
  for (const auto& tr : traces) {
    for (const auto& f : tr.fits) {
      std::string dep = f.independent == 1 ? "s2" : "s1";
      std::string ind = f.independent == 1 ? "s1" : "s2";
      std::string model = f.axis ? dep + "=0" : dep + "=c*" + ind + "^e";
      os << tr.stratum.name() << ',' << model << ',' << csv_num(f.exponent_round) << ','
         << csv_num(f.exponent) << ',' << csv_num(f.coefficient) << ',' << csv_num(f.residual)
         << ',' << csv_num(f.leading_residual) << ',' << f.rays << '\n';
    }
  }
  return os.str();
}

std::string sweep_csv(const SweepResult& sweep) {
  std::ostringstream os;
  os << "i,j,s1,s2,region,features\n";
  for (int j = 0; j < sweep.n2; ++j)
    for (int i = 0; i < sweep.n1; ++i) {
      const auto& c = sweep.cell(i, j);
      os << i << ',' << j << ',' << csv_num(c.s1) << ',' << csv_num(c.s2) << ',' << c.region
         << ",\"" << c.features << "\"\n";
    }
  return os.str();
}

}  // namespace mink
