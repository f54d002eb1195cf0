#include "sliderule/scale.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "sliderule/errors.hpp"
#include "sliderule/format.hpp"

namespace sliderule {

bool Interval::lo_infinite() const { return std::isinf(lo); }
bool Interval::hi_infinite() const { return std::isinf(hi); }

std::string Interval::to_string() const {
  std::string out;
  out += lo_open ? '(' : '[';
  out += format_number(lo);
  out += ", ";
  out += format_number(hi);
  out += hi_open ? ')' : ']';
  return out;
}

std::string_view to_string(Direction d) {
  return d == Direction::Increasing ? "increasing" : "decreasing";
}

// ---------------------------------------------------------------------------
// ScaleFunction

namespace {

void validate_domain(const Interval& d) {
  if (std::isnan(d.lo) || std::isnan(d.hi)) throw DomainError("domain bound is NaN", d.lo);
  if (!(d.lo < d.hi)) throw DomainError("empty domain " + d.to_string(), d.lo);
  if (d.lo_infinite() && d.hi_infinite()) {
    throw DomainError("domain " + d.to_string() + " has no finite end", d.lo);
  }
  if ((d.lo_infinite() && !d.lo_open) || (d.hi_infinite() && !d.hi_open)) {
    throw DomainError("an infinite domain end must be open: " + d.to_string(), d.lo);
  }
}

}  // namespace

ScaleFunction::ScaleFunction(Expr expr, std::string variable, Interval domain, ParamMap params)
    : expr_(std::move(expr)),
      bound_(expr_),
      variable_(std::move(variable)),
      domain_(domain),
      params_(std::move(params)) {
  validate_domain(domain_);
  expr_ = expr_.resolve(variable_, params_);
  for (const auto& name : expr_.symbols(SymbolKind::Variable)) {
    if (name != variable_) {
      throw EvalError("expression uses variable '" + name + "' but the scale variable is '" +
                      variable_ + "'");
    }
  }
  bound_ = expr_.bind(params_);

  if (domain_.lo_infinite()) {
    const double inset = domain_.hi_open ? kOpenInset * std::max(1.0, std::abs(domain_.hi)) : 0.0;
    upper_ = domain_.hi - inset;
    lower_ = domain_.hi - kFarFactor * std::max(1.0, std::abs(domain_.hi));
  } else if (domain_.hi_infinite()) {
    const double inset = domain_.lo_open ? kOpenInset * std::max(1.0, std::abs(domain_.lo)) : 0.0;
    lower_ = domain_.lo + inset;
    upper_ = domain_.lo + kFarFactor * std::max(1.0, std::abs(domain_.lo));
  } else {
    const double span = domain_.hi - domain_.lo;
    lower_ = domain_.lo + (domain_.lo_open ? kOpenInset * span : 0.0);
    upper_ = domain_.hi - (domain_.hi_open ? kOpenInset * span : 0.0);
  }
  value_lower_ = evaluate_unchecked(lower_);
  value_upper_ = evaluate_unchecked(upper_);
  direction_ = value_upper_ >= value_lower_ ? Direction::Increasing : Direction::Decreasing;
}

ScaleFunction ScaleFunction::unchecked(Expr expr, std::string variable, Interval domain,
                                       ParamMap params) {
  return ScaleFunction(std::move(expr), std::move(variable), domain, std::move(params));
}

ScaleFunction ScaleFunction::create(Expr expr, std::string variable, Interval domain, ParamMap params) {
  ScaleFunction fn(std::move(expr), std::move(variable), domain, std::move(params));
  const MonotoneReport report = check_monotone(fn);
  if (!report.ok) {
    const auto& v = *report.first_violation;
    throw NotMonotone(fn.to_string() + " is not strictly monotone: f(" + format_number(v.x0) +
                          ") = " + format_number(v.value0) + ", f(" + format_number(v.x1) +
                          ") = " + format_number(v.value1),
                      v.x0);
  }
  return fn;
}

ScaleFunction ScaleFunction::parse(std::string_view text, std::string variable, Interval domain,
                                   ParamMap params) {
  ParseContext context;
  context.variable = variable;
  for (const auto& [name, value] : params) context.parameters.insert(name);
  Expr expr = parse_expression(text, context);
  return create(std::move(expr), std::move(variable), domain, std::move(params));
}

double ScaleFunction::value_min() const { return std::min(value_lower_, value_upper_); }
double ScaleFunction::value_max() const { return std::max(value_lower_, value_upper_); }

bool ScaleFunction::contains(double x) const {
  if (!std::isfinite(x)) return false;
  const bool lo_ok = domain_.lo_infinite() ? x >= lower_ : (domain_.lo_open ? x > domain_.lo : x >= domain_.lo);
  const bool hi_ok = domain_.hi_infinite() ? x <= upper_ : (domain_.hi_open ? x < domain_.hi : x <= domain_.hi);
  return lo_ok && hi_ok;
}

double ScaleFunction::at_fraction(double t) const {
  t = std::clamp(t, 0.0, 1.0);
  if (t == 0.0) return lower_;
  if (t == 1.0) return upper_;
  const double span = upper_ - lower_;
  if (domain_.hi_infinite()) return lower_ + std::expm1(t * std::log1p(span));
  if (domain_.lo_infinite()) return upper_ - std::expm1((1.0 - t) * std::log1p(span));
  return lower_ + t * span;
}

double ScaleFunction::grid_point(std::size_t i, std::size_t n) const {
  if (n < 2) return lower_;
  return at_fraction(static_cast<double>(i) / static_cast<double>(n - 1));
}

double ScaleFunction::operator()(double x) const {
  if (!contains(x)) {
    throw DomainError(format_number(x) + " is outside the domain " + domain_.to_string() + " of " +
                          expr_.to_string(),
                      x);
  }
  return evaluate_unchecked(x);
}

double ScaleFunction::evaluate_unchecked(double x) const { return bound_.evaluate(x); }

std::string ScaleFunction::to_string() const {
  return expr_.to_string() + " on " + domain_.to_string();
}

bool operator==(const ScaleFunction& a, const ScaleFunction& b) {
  return a.expr_ == b.expr_ && a.variable_ == b.variable_ && a.domain_ == b.domain_ &&
         a.params_ == b.params_;
}

double eval_scale_fn(const ScaleFunction& fn, double x) { return fn(x); }

// ---------------------------------------------------------------------------
// inversion

namespace {

constexpr int kMaxBisections = 100;
constexpr double kWidthTolerance = 1e-12;
constexpr double kResidualTolerance = 1e-9;

double midpoint(double a, double b) {
  // Geometric midpoint on wide same-sign brackets keeps relative resolution.
  if (a > 0.0 && b / a > 1e3) return std::sqrt(a) * std::sqrt(b);
  if (b < 0.0 && a / b > 1e3) return -std::sqrt(-a) * std::sqrt(-b);
  return a + 0.5 * (b - a);
}

}  // namespace

double invert_scale_fn(const ScaleFunction& fn, double u) {
  if (!std::isfinite(u)) throw RangeError("cannot invert at non-finite value " + format_number(u));
  const double tol = kResidualTolerance * std::max(1.0, std::abs(u));
  const double vmin = fn.value_min();
  const double vmax = fn.value_max();
  if (u < vmin - tol || u > vmax + tol) {
    throw RangeError(format_number(u) + " is outside the range [" + format_number(vmin) + ", " +
                     format_number(vmax) + "] of " + fn.to_string());
  }
  const bool increasing = fn.direction() == Direction::Increasing;
  if (u <= vmin) return increasing ? fn.lower() : fn.upper();
  if (u >= vmax) return increasing ? fn.upper() : fn.lower();

  double a = fn.lower();
  double b = fn.upper();
  double best_x = a;
  double best_residual = std::abs(fn.value_at_lower() - u);
  if (std::abs(fn.value_at_upper() - u) < best_residual) {
    best_x = b;
    best_residual = std::abs(fn.value_at_upper() - u);
  }
  for (int iter = 0; iter < kMaxBisections; ++iter) {
    const double m = midpoint(a, b);
    if (m <= a || m >= b) break;  // adjacent doubles
    const double fm = fn.evaluate_unchecked(m);
    const double residual = std::abs(fm - u);
    if (residual < best_residual) {
      best_residual = residual;
      best_x = m;
    }
    if ((fm < u) == increasing) {
      a = m;
    } else {
      b = m;
    }
    if (b - a <= kWidthTolerance * std::max(1.0, std::abs(m)) && best_residual <= tol) break;
  }
  if (best_residual > tol) {
    throw NoConvergence("inverting " + fn.to_string() + " at " + format_number(u) +
                            " left residual " + format_number(best_residual),
                        best_residual);
  }
  return best_x;
}

MonotoneReport check_monotone(const ScaleFunction& fn, std::size_t samples) {
  if (samples < 2) throw std::invalid_argument("check_monotone needs at least 2 samples");
  MonotoneReport report;
  double prev_x = fn.grid_point(0, samples);
  double prev_v = 0.0;
  auto eval = [&](double x) {
    try {
      return fn.evaluate_unchecked(x);
    } catch (const EvalError& e) {
      throw EvalError(std::string(e.what()) + " (grid point " + format_number(x) + ")", x);
    }
  };
  prev_v = eval(prev_x);
  std::optional<Direction> direction;
  for (std::size_t i = 1; i < samples; ++i) {
    const double x = fn.grid_point(i, samples);
    const double v = eval(x);
    std::optional<Direction> step;
    if (v > prev_v) step = Direction::Increasing;
    if (v < prev_v) step = Direction::Decreasing;
    if (!direction && step) direction = step;
    if (!step || step != direction) {
      report.ok = false;
      report.direction = direction;
      report.first_violation = MonotoneReport::Violation{i - 1, prev_x, x, prev_v, v};
      return report;
    }
    prev_x = x;
    prev_v = v;
  }
  report.ok = true;
  report.direction = direction;
  return report;
}

// ---------------------------------------------------------------------------
// Scale

Scale::Scale(ScaleFunction function, double mm_per_unit, double origin_value, bool reversed,
             std::optional<std::string> origin_label, int)
    : function_(std::move(function)),
      mm_per_unit_(mm_per_unit),
      origin_value_(origin_value),
      reversed_(reversed),
      origin_label_(std::move(origin_label)) {
  if (!(mm_per_unit_ > 0.0) || !std::isfinite(mm_per_unit_)) {
    throw DegenerateScale("scale " + function_.to_string() + " has no usable unit length");
  }
  const double a = position_of_value(function_.value_at_lower());
  const double b = position_of_value(function_.value_at_upper());
  start_mm_ = std::min(a, b);
  end_mm_ = std::max(a, b);
}

Scale::Scale(ScaleFunction function, double length_mm, bool reversed,
             std::optional<std::string> origin_label)
    : Scale(function, [&] {
        if (!(length_mm > 0.0) || !std::isfinite(length_mm)) {
          throw std::invalid_argument("scale length must be positive");
        }
        const double span = function.value_max() - function.value_min();
        if (!(span > 0.0)) throw DegenerateScale("scale " + function.to_string() + " has zero span");
        return length_mm / span;
      }(),
            reversed ? function.value_max() : function.value_min(), reversed, std::move(origin_label), 0) {
  start_mm_ = 0.0;
  end_mm_ = length_mm;
}

Scale Scale::aligned(ScaleFunction function, double mm_per_unit, double origin_value, bool reversed,
                     std::optional<std::string> origin_label) {
  return Scale(std::move(function), mm_per_unit, origin_value, reversed, std::move(origin_label), 0);
}

double Scale::position_of_value(double u) const {
  const double pos = mm_per_unit_ * (u - origin_value_);
  return reversed_ ? -pos : pos;
}

double Scale::value_of_position(double pos_mm) const {
  return origin_value_ + (reversed_ ? -pos_mm : pos_mm) / mm_per_unit_;
}

double position_of(const Scale& scale, double x) {
  const double pos = scale.position_of_value(scale.function()(x));
  return std::clamp(pos, scale.start_mm(), scale.end_mm());
}

double value_at(const Scale& scale, double pos_mm) {
  const double slack = 1e-9 * std::max(1.0, scale.length_mm());
  if (!(pos_mm >= scale.start_mm() - slack && pos_mm <= scale.end_mm() + slack)) {
    throw RangeError("position " + format_fixed(pos_mm, 4) + " mm is outside the scale [" +
                     format_fixed(scale.start_mm(), 4) + ", " + format_fixed(scale.end_mm(), 4) + "] mm");
  }
  const double clamped = std::clamp(pos_mm, scale.start_mm(), scale.end_mm());
  return invert_scale_fn(scale.function(), scale.value_of_position(clamped));
}

}  // namespace sliderule
