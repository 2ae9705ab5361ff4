#include <gtest/gtest.h>

#include <regex>

#include "minkcurve/io.hpp"

using namespace mink;

namespace {

int count(const std::string& s, const std::string& what) {
  int n = 0;
  for (std::size_t p = s.find(what); p != std::string::npos; p = s.find(what, p + 1)) ++n;
  return n;
}

}  // namespace

TEST(Parser, FamilyComponents) {
  MPoly t = MPoly::var(0), s1 = MPoly::var(1), s2 = MPoly::var(2);
  EXPECT_EQ(parse_expr("t^4 + s1*t^2"), pow(t, 4) + s1 * pow(t, 2));
  EXPECT_EQ(parse_expr("(1+s2)*t^2 + s1*t + t^3"), (1.0 + s2) * pow(t, 2) + s1 * t + pow(t, 3));
}

TEST(Parser, Numbers) {
  EXPECT_EQ(parse_expr("1/4*t"), MPoly::var(0) * 0.25);
  EXPECT_EQ(parse_expr("0.5 * t ^ 2"), pow(MPoly::var(0), 2) * 0.5);
  EXPECT_EQ(parse_expr("-t"), -MPoly::var(0));
  EXPECT_EQ(parse_expr("t - t"), MPoly());
}

TEST(Parser, ErrorOffsets) {
  auto offset = [](const std::string& s) -> long {
    try {
      parse_expr(s);
    } catch (const ParseError& e) {
      return static_cast<long>(e.offset);
    }
    return -1;
  };
  EXPECT_EQ(offset("t^^2"), 2);
  EXPECT_EQ(offset("2t"), 1);
  EXPECT_EQ(offset("t^-1"), 2);
  EXPECT_EQ(offset("sin(t)"), 0);
  EXPECT_EQ(offset("(t+1"), 4);
  EXPECT_EQ(offset("t/2"), 1);
  EXPECT_EQ(offset("1/0"), 2);
  EXPECT_EQ(offset(""), 0);
}

TEST(CurveSpec, ExpressionsAndModel) {
  auto a = curve_spec_from_json(Json::parse(R"({"x":"t","y":"t^4 + s1*t^2","params":{"s1":-0.01}})"));
  auto b = curve_spec_from_json(Json::parse(R"({"model":"I2","params":{"s1":-0.01}})"));
  EXPECT_EQ(a.curve().x, b.curve().x);
  EXPECT_EQ(a.curve().y, b.curve().y);
}

TEST(CurveSpec, Options) {
  auto s = curve_spec_from_json(Json::parse(
      R"({"model":"LC","params":{"s1":0.001,"s2":0.02},"window":[-0.2,0.3],"jet_order":8,
          "tolerances":{"lightlike":1e-10,"grid":512}})"));
  EXPECT_EQ(s.family().window_lo, -0.2);
  EXPECT_EQ(s.family().window_hi, 0.3);
  EXPECT_EQ(s.detect.jet_order, 8);
  EXPECT_EQ(s.detect.grid, 512);
  EXPECT_EQ(s.detect.lightlike_tol, 1e-10);
}

TEST(CurveSpec, Rejections) {
  EXPECT_THROW(curve_spec_from_json(Json::parse(R"({"model":"I2","x":"t"})")), std::invalid_argument);
  EXPECT_THROW(curve_spec_from_json(Json::parse(R"({"x":"t"})")), std::invalid_argument);
  EXPECT_THROW(curve_spec_from_json(Json::parse(R"({"model":"Q9"})")), std::invalid_argument);
  EXPECT_THROW(curve_spec_from_json(Json::parse(R"({"x":"t","y":"t^^2"})")), ParseError);
  EXPECT_THROW(curve_spec_from_json(Json::parse(R"({"model":"I2","window":[1,0]})")), std::invalid_argument);
}

TEST(CensusRecord, RoundTripIsByteIdentical) {
  for (const char* spec : {R"({"model":"C","params":{"s1":-0.04},"window":[-0.4,0.4]})",
                           R"({"model":"LC","params":{"s1":0.0,"s2":0.01}})",
                           R"({"x":"t","y":"0.97*t + t^3","window":[-0.3,0.3]})"}) {
    auto s = curve_spec_from_json(Json::parse(spec));
    auto f = s.family();
    auto rec = make_record(s, analyze_curve(s.curve(), f.window_lo, f.window_hi, s.detect, s.crossings));
    std::string once = to_json(rec).dump(2);
    auto back = record_from_json(Json::parse(once));
    EXPECT_EQ(to_json(back).dump(2), once) << spec;
    EXPECT_EQ(features_from_record(back), rec.features) << spec;
  }
}

TEST(CensusRecord, FieldOrder) {
  auto s = curve_spec_from_json(Json::parse(R"({"model":"I2","params":{"s1":-0.01}})"));
  auto rec = make_record(s, analyze_curve(s.curve(), -0.5, 0.5));
  std::string d = to_json(rec).dump();
  EXPECT_LT(d.find("\"input\""), d.find("\"points\""));
  EXPECT_LT(d.find("\"points\""), d.find("\"self_intersections\""));
  EXPECT_LT(d.find("\"self_intersections\""), d.find("\"features\""));
  EXPECT_NE(d.find("\"features\":\"I V- I\""), std::string::npos);
}

TEST(Format, TwelveDigits) {
  EXPECT_EQ(fmt12(1.0 / 3.0), "0.333333333333");
  EXPECT_EQ(fmt12(-0.0), "0");
  EXPECT_EQ(canon(0.1 + 0.2), 0.3);
}

TEST(Emitters, CausticCsv) {
  PolyCurve c{{0, 0, 1}, {0, 0, 0, 1}, ""};
  std::string csv = caustic_csv(caustic(c, -0.5, 0.5), 1.0);
  EXPECT_EQ(csv.rfind("branch_id,t,x,y,kind\n", 0), 0u);
  EXPECT_EQ(csv.find('\r'), std::string::npos);
  EXPECT_EQ(count(csv, ",line\n"), 2);
  EXPECT_GT(count(csv, ",branch\n"), 100);
}

TEST(Emitters, SvgMarkers) {
  PolyCurve c{{0, 0, 1}, {0, -0.04, 0, 1}, ""};
  auto cen = find_special_points(c, -0.4, 0.4);
  auto br = caustic(c, -0.4, 0.4);
  std::string svg = curve_svg(c, -0.4, 0.4, cen, br);
  EXPECT_EQ(svg.rfind("<?xml", 0), 0u);
  EXPECT_EQ(count(svg, "class=\"marker "), static_cast<int>(cen.points.size()));
  EXPECT_EQ(count(svg, "<circle"), cen.count(PointKind::Vertex));
  EXPECT_EQ(count(svg, "<rect"), cen.count(PointKind::Inflection));
  EXPECT_EQ(count(svg, "<path class=\"curve\""), 1);
  EXPECT_GE(count(svg, "<path class=\"caustic\""), 1);
  // Every element closes.
  EXPECT_EQ(count(svg, "<"), count(svg, ">"));
  EXPECT_EQ(count(svg, "<svg"), 1);
  EXPECT_EQ(count(svg, "</svg>"), 1);
  std::smatch m;
  ASSERT_TRUE(std::regex_search(svg, m, std::regex("viewBox=\"([^\"]+)\"")));
}

TEST(Emitters, SweepCsv) {
  auto sw = census_sweep(model_family("I2"), -0.05, 0.05, 5);
  std::string csv = sweep_csv(sw);
  EXPECT_EQ(csv.rfind("i,j,s1,s2,region,features\n", 0), 0u);
  EXPECT_EQ(count(csv, "\n"), 6);
  EXPECT_NE(csv.find("\"I V- I\""), std::string::npos);
}
