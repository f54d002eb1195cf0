#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sliderule/layout.hpp"
#include "sliderule/rule.hpp"

namespace sliderule {

inline constexpr int kSheetVersion = 1;

struct SheetFunction {
  std::string variable;
  std::string expr;
  Interval domain;
  ParamMap params;
  Direction direction = Direction::Increasing;

  friend bool operator==(const SheetFunction&, const SheetFunction&) = default;
};

/// One strip of a rule, laid out. Positions are mm from the strip origin S,
/// pos = (reversed ? -1 : 1) * mm_per_unit * (fn(x) - origin_value).
struct SheetScale {
  std::string id;
  std::vector<std::string> roles;  // subset of F, f, g
  std::string strip;               // "stator" or "slide"
  SheetFunction function;
  double mm_per_unit = 1.0;
  double origin_value = 0.0;
  bool reversed = false;
  std::optional<std::string> origin_label;
  double start_mm = 0.0;
  double end_mm = 0.0;
  std::vector<Tick> ticks;

  friend bool operator==(const SheetScale&, const SheetScale&) = default;
};

struct GaugeMark {
  std::string scale_id;
  std::string label;
  double value;
  double pos_mm;

  friend bool operator==(const GaugeMark&, const GaugeMark&) = default;
};

struct SheetRule {
  std::string name;
  std::string description;
  std::string kind;  // direct, bilinear, product, power
  std::string op;    // "+" or "-"
  bool shares_F_f = false;
  std::optional<double> alpha;
  double length_mm = 0.0;
  Interval result_domain;
  std::vector<SheetScale> scales;
  std::vector<GaugeMark> gauge_marks;

  friend bool operator==(const SheetRule&, const SheetRule&) = default;
};

/// Self-contained bundle of laid-out scales; the document the renderer and
/// the browser front end read.
struct ScaleSheet {
  int version = kSheetVersion;
  std::vector<SheetRule> rules;

  friend bool operator==(const ScaleSheet&, const ScaleSheet&) = default;
};

/// Mounts every rule (stator F and f, slide g; F and f share a strip when the
/// rule says so), lays out ticks and adds a sqrt(2) gauge mark to quadratic
/// power scales. Tick positions are rounded to 4 decimals. DegenerateScale
/// messages name the offending scale id.
ScaleSheet export_sheet(const std::vector<RuleSpec>& rules, double length_mm = 250.0,
                        const TickPolicy& policy = {});

/// JSON text, two-space indented, stable key order. Infinite values are
/// written as the strings "inf" / "-inf".
std::string serialize_sheet(const ScaleSheet& sheet);

/// Inverse of serialize_sheet. Throws ParseError for malformed documents and
/// Error("UnsupportedVersion") for other versions.
ScaleSheet parse_sheet(std::string_view text);

/// Rebuilds and recompiles the RuleSpec a sheet rule was exported from.
RuleSpec rule_from_sheet(const SheetRule& rule);

}  // namespace sliderule
