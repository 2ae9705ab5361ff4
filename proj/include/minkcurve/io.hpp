#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "minkcurve/caustic.hpp"
#include "minkcurve/families.hpp"
#include "minkcurve/multilocal.hpp"

namespace mink {

using Json = nlohmann::ordered_json;

struct ParseError : std::runtime_error {
  std::size_t offset;
  ParseError(const std::string& msg, std::size_t off);
};

// expr   := term (('+'|'-') term)*
// term   := factor ('*' factor)*
// factor := '-' factor | base ('^' uint)?
// base   := number | 't' | 's1' | 's2' | '(' expr ')'
// number := digits ['.' digits] | digits '/' digits
// Variables land in slots t = 0, s1 = 1, s2 = 2.
MPoly parse_expr(const std::string& text);

struct CurveSpec {
  std::optional<std::string> model;
  std::string x_text, y_text;  // empty for models
  double s1 = 0.0, s2 = 0.0;
  double window_lo = -0.5, window_hi = 0.5;
  bool window_given = false;
  int jet_order = kDefaultJetOrder;
  DetectConfig detect;
  SelfIntersectionConfig crossings;

  ParamFamily family() const;  // the expressions or the model, s left free
  PolyCurve curve() const;     // at (s1, s2)
  Json echo() const;
};

// Accepts {"x": e, "y": e} or {"model": name, "params": {"s1": .., "s2": ..}},
// plus optional "window", "jet_order" and "tolerances".
CurveSpec curve_spec_from_json(const Json& j);

// Rounds to 12 significant digits so that emitted JSON is canonical.
double canon(double v);
std::string fmt12(double v);

struct CensusRecord {
  Json input;
  Census census;
  std::string features;
};

CensusRecord make_record(const CurveSpec& spec, const Analysis& a);
Json to_json(const CensusRecord& r);
CensusRecord record_from_json(const Json& j);
// Feature string rebuilt from the point and crossing lists alone.
std::string features_from_record(const CensusRecord& r);

std::string caustic_csv(const std::vector<CausticBranch>& branches, double line_extent);
std::string curve_svg(const PolyCurve& c, double a, double b, const Census& census,
                      const std::vector<CausticBranch>& branches, int samples = 400);

std::string strata_csv(const std::vector<StratumTrace>& traces);
std::string fits_csv(const std::vector<StratumTrace>& traces);
std::string sweep_csv(const SweepResult& sweep);

}  // namespace mink
