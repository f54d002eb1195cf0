#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sliderule/rule.hpp"

namespace sliderule {

/// Name and description attached to a compiled rule.
struct RuleInfo {
  std::string name = "rule";
  std::string description;
};

/// One finding of validate_rule. kind matches the error class names
/// (NotMonotone, PositivityViolation, EmptyRule, ZeroA, ...).
struct Diagnostic {
  std::string kind;
  std::string message;
  std::string subject;  // "F", "f", "g", "u", "v", "w", or "" for the whole rule
  std::optional<double> witness;
};

/// F(z) = f(x) op g(y). Throws NotMonotone or EmptyRule.
RuleSpec compile_direct(const ScaleFunction& F, const ScaleFunction& f, const ScaleFunction& g, Op op,
                        RuleInfo info = {});

/// a*u*v + b*u + c*v + d*w + e = 0 rewritten as
///   ln(u + c/a) + ln(v + b/a) = ln(bc/a^2 - (d*w + e)/a).
/// The x and y brackets must be positive on the whole declared domains; the z
/// domain is narrowed to the part where its bracket is positive (recorded in
/// RuleSpec::notes). Throws ZeroA, NotMonotone, PositivityViolation, EmptyRule.
RuleSpec compile_bilinear(const BilinearForm& form, RuleInfo info = {});

/// u*v*w + u + v + w = 0 rewritten as
///   ln((1-u)/(1+u)) + ln((1-v)/(1+v)) = -ln((1-w)/(1+w)).
/// Needs |u|, |v|, |w| < 1. Throws PositivityViolation, NotMonotone, EmptyRule.
RuleSpec compile_product_form(const ScaleFunction& u, const ScaleFunction& v, const ScaleFunction& w,
                              RuleInfo info = {});

/// z^alpha = x^alpha op y^alpha with F = f = g = x^alpha on `domain` (within [0, inf)).
/// Throws ZeroAlpha.
RuleSpec compile_power_rule(double alpha, Op op, Interval domain, RuleInfo info = {});

/// Re-checks everything the compilers guarantee. Empty result means valid.
std::vector<Diagnostic> validate_rule(const RuleSpec& rule);

/// Number of grid points per variable for positivity checks.
inline constexpr std::size_t kPositivitySamples = 1025;

}  // namespace sliderule
