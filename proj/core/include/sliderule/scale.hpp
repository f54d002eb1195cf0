#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "sliderule/expr.hpp"

namespace sliderule {

/// Real interval with open/closed ends. An end may be infinite only if it is
/// open; such an end is realized at a far finite point (see ScaleFunction).
struct Interval {
  double lo = 0.0;
  double hi = 1.0;
  bool lo_open = false;
  bool hi_open = false;

  static Interval closed(double lo, double hi) { return {lo, hi, false, false}; }
  static Interval open(double lo, double hi) { return {lo, hi, true, true}; }

  bool lo_infinite() const;
  bool hi_infinite() const;
  std::string to_string() const;

  friend bool operator==(const Interval&, const Interval&) = default;
};

enum class Direction { Increasing, Decreasing };

std::string_view to_string(Direction d);

/// Outcome of a sampled monotonicity check.
struct MonotoneReport {
  struct Violation {
    std::size_t index;  // grid index of the first point of the offending pair
    double x0, x1;
    double value0, value1;
  };

  bool ok = false;
  std::optional<Direction> direction;
  std::optional<Violation> first_violation;
};

/// Strictly monotone real function of one variable on an explicit domain.
///
/// Numerics never touch an open end itself: a finite open end is inset by
/// 1e-9 of the span, an infinite end is realized at 1e12 * max(1, |other end|)
/// away from the finite end. lower()/upper() are these realized endpoints.
class ScaleFunction {
 public:
  static constexpr std::size_t kDefaultSamples = 1025;
  static constexpr double kOpenInset = 1e-9;
  static constexpr double kFarFactor = 1e12;

  /// Builds and verifies (check_monotone with kDefaultSamples). Throws
  /// NotMonotone, EvalError, or DomainError for a malformed domain.
  static ScaleFunction create(Expr expr, std::string variable, Interval domain, ParamMap params = {});

  /// Same, parsing `text` against `variable` and the names in `params`.
  static ScaleFunction parse(std::string_view text, std::string variable, Interval domain,
                             ParamMap params = {});

  /// Skips the monotonicity check. Direction is taken from the endpoint values.
  /// Used to carry invalid definitions into validate_rule diagnostics.
  static ScaleFunction unchecked(Expr expr, std::string variable, Interval domain, ParamMap params = {});

  const Expr& expr() const { return expr_; }
  const std::string& variable() const { return variable_; }
  const Interval& domain() const { return domain_; }
  const ParamMap& params() const { return params_; }
  Direction direction() const { return direction_; }

  double lower() const { return lower_; }
  double upper() const { return upper_; }
  double value_at_lower() const { return value_lower_; }
  double value_at_upper() const { return value_upper_; }
  double value_min() const;
  double value_max() const;

  bool contains(double x) const;

  /// Point i of an n-point grid over [lower(), upper()]. Uniform for finite
  /// domains; log-spaced away from the finite end when one end is infinite.
  double grid_point(std::size_t i, std::size_t n) const;

  /// Maps t in [0, 1] into the domain with the same spacing as grid_point.
  double at_fraction(double t) const;

  /// Evaluates at x. Throws DomainError outside the domain, EvalError where the
  /// expression is undefined.
  double operator()(double x) const;

  /// Evaluates without the domain check (x must lie in [lower(), upper()]).
  double evaluate_unchecked(double x) const;

  /// e.g. "x^2 on [0, 10]"
  std::string to_string() const;

  friend bool operator==(const ScaleFunction& a, const ScaleFunction& b);

 private:
  ScaleFunction(Expr expr, std::string variable, Interval domain, ParamMap params);

  Expr expr_;
  Expr bound_;
  std::string variable_;
  Interval domain_;
  ParamMap params_;
  double lower_ = 0.0;
  double upper_ = 1.0;
  double value_lower_ = 0.0;
  double value_upper_ = 1.0;
  Direction direction_ = Direction::Increasing;
};

double eval_scale_fn(const ScaleFunction& fn, double x);

/// Bisection on the realized domain (100 iterations or relative width 1e-12).
/// Throws RangeError if u is outside the function's range, NoConvergence if the
/// residual |fn(x) - u| <= 1e-9 * max(1, |u|) cannot be met.
double invert_scale_fn(const ScaleFunction& fn, double u);

MonotoneReport check_monotone(const ScaleFunction& fn,
                              std::size_t samples = ScaleFunction::kDefaultSamples);

/// A scale function bound to a physical strip. position = s * k * (fn(x) - origin)
/// where k is mm per function unit and s = -1 when reversed.
class Scale {
 public:
  /// Fitted strip: the domain maps onto [0, length_mm]. When not reversed the
  /// smallest function value sits at 0.
  Scale(ScaleFunction function, double length_mm, bool reversed = false,
        std::optional<std::string> origin_label = std::nullopt);

  /// Strip sharing a unit length and origin with other strips of a rule; its
  /// extent is [start_mm(), end_mm()], not necessarily starting at 0.
  static Scale aligned(ScaleFunction function, double mm_per_unit, double origin_value, bool reversed,
                       std::optional<std::string> origin_label = std::nullopt);

  const ScaleFunction& function() const { return function_; }
  double length_mm() const { return end_mm_ - start_mm_; }
  bool reversed() const { return reversed_; }
  const std::optional<std::string>& origin_label() const { return origin_label_; }
  double mm_per_unit() const { return mm_per_unit_; }
  double origin_value() const { return origin_value_; }
  double start_mm() const { return start_mm_; }
  double end_mm() const { return end_mm_; }

  /// Position of the function value u (no domain check).
  double position_of_value(double u) const;
  /// Function value at a position (no range check).
  double value_of_position(double pos_mm) const;

 private:
  Scale(ScaleFunction function, double mm_per_unit, double origin_value, bool reversed,
        std::optional<std::string> origin_label, int /*tag*/);

  ScaleFunction function_;
  double mm_per_unit_;
  double origin_value_;
  bool reversed_;
  std::optional<std::string> origin_label_;
  double start_mm_;
  double end_mm_;
};

/// Throws DomainError when x is outside the scale's domain.
double position_of(const Scale& scale, double x);

/// Throws RangeError when pos_mm is outside [start_mm, end_mm] (1e-9 relative slack).
double value_at(const Scale& scale, double pos_mm);

}  // namespace sliderule
