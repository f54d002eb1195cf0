#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sliderule/compiler.hpp"

namespace sliderule {

/// A compile-time failure attached to a DSL statement.
struct DslDiagnostic {
  std::size_t line;
  std::size_t column;
  std::string kind;
  std::string message;
  std::optional<double> witness;
};

struct DslDocument {
  ParamMap params;
  std::map<std::string, ScaleFunction, std::less<>> scales;
  std::vector<RuleSpec> rules;
  std::vector<DslDiagnostic> diagnostics;

  bool ok() const { return diagnostics.empty(); }
};

/// Reads a rule file:
///
///   param R = 6371000
///   scale h(x) = R*arccos(R/(R+x)) on [0, 1000]
///   rule sq: power alpha=2 op=+ on [0, 10]
///
/// Syntax errors and unknown names throw ParseError carrying line and column.
/// Semantic failures (non-monotone scales, positivity, empty rules) are
/// collected as diagnostics and the offending statement is skipped.
DslDocument parse_dsl(std::string_view text);

}  // namespace sliderule
