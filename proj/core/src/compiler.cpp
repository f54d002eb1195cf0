#include "sliderule/compiler.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "sliderule/errors.hpp"
#include "sliderule/format.hpp"

namespace sliderule {

namespace {

Expr add_constant(Expr e, double c) {
  if (c == 0.0) return e;
  if (c > 0.0) return Expr::binary(BinaryOp::Add, std::move(e), Expr::number(c));
  return Expr::binary(BinaryOp::Sub, std::move(e), Expr::number(-c));
}

Expr scale_by(double m, Expr e) {
  if (m == 1.0) return e;
  if (m == -1.0) return Expr::negate(std::move(e));
  return Expr::binary(BinaryOp::Mul, Expr::number(m), std::move(e));
}

Expr ln(Expr e) { return Expr::call(Intrinsic::Ln, {std::move(e)}); }

std::string violation_text(const std::string& subject, const ScaleFunction& fn,
                           const MonotoneReport& report) {
  std::string out = subject + " = " + fn.to_string() + " is not strictly monotone";
  if (report.first_violation) {
    const auto& v = *report.first_violation;
    out += ": values " + format_number(v.value0) + " at " + format_number(v.x0) + " and " +
           format_number(v.value1) + " at " + format_number(v.x1);
  }
  return out;
}

void require_monotone(const std::string& subject, const ScaleFunction& fn) {
  const MonotoneReport report = check_monotone(fn);
  if (!report.ok) {
    throw NotMonotone(violation_text(subject, fn, report), report.first_violation->x0);
  }
}

struct Span {
  double lo;
  double hi;
};

Span reachable(const ScaleFunction& f, const ScaleFunction& g, Op op) {
  if (op == Op::Plus) return {f.value_min() + g.value_min(), f.value_max() + g.value_max()};
  return {f.value_min() - g.value_max(), f.value_max() - g.value_min()};
}

std::optional<Interval> result_domain(const ScaleFunction& F, const ScaleFunction& f,
                                      const ScaleFunction& g, Op op) {
  const Span r = reachable(f, g, op);
  const double lo = std::max(r.lo, F.value_min());
  const double hi = std::min(r.hi, F.value_max());
  if (lo > hi) return std::nullopt;
  const double z0 = invert_scale_fn(F, lo);
  const double z1 = invert_scale_fn(F, hi);
  return Interval::closed(std::min(z0, z1), std::max(z0, z1));
}

Interval require_result_domain(const ScaleFunction& F, const ScaleFunction& f, const ScaleFunction& g,
                               Op op) {
  auto domain = result_domain(F, f, g, op);
  if (!domain) {
    const Span r = reachable(f, g, op);
    throw EmptyRule("f(x) " + std::string(1, op_symbol(op)) + " g(y) spans [" + format_number(r.lo) +
                    ", " + format_number(r.hi) + "], which misses the range [" +
                    format_number(F.value_min()) + ", " + format_number(F.value_max()) + "] of F");
  }
  return *domain;
}

struct NonPositive {
  double at;
  double value;
};

/// First grid point of fn's domain where bracket(fn(x)) <= 0.
std::optional<NonPositive> first_nonpositive(const ScaleFunction& fn,
                                             const std::function<double(double)>& bracket) {
  for (std::size_t i = 0; i < kPositivitySamples; ++i) {
    const double x = fn.grid_point(i, kPositivitySamples);
    const double value = bracket(fn.evaluate_unchecked(x));
    if (!(value > 0.0)) return NonPositive{x, value};
  }
  return std::nullopt;
}

const char* kBracketX = "u(x) + c/a";
const char* kBracketY = "v(y) + b/a";
const char* kBracketZ = "bc/a^2 - (d*w(z) + e)/a";

struct BilinearConstants {
  double cu;  // c/a
  double bv;  // b/a
  double k;   // bc/a^2 - e/a
  double m;   // -d/a
};

BilinearConstants constants_of(const BilinearForm& form) {
  return {form.c / form.a, form.b / form.a, form.b * form.c / (form.a * form.a) - form.e / form.a,
          -form.d / form.a};
}

/// Largest sub-domain of w's domain on which k + m*w(z) > 0. Empty optional if
/// there is none.
std::optional<Interval> feasible_z_domain(const ScaleFunction& w, const BilinearConstants& k) {
  auto bracket = [&](double z) { return k.k + k.m * w.evaluate_unchecked(z); };
  const std::size_t n = kPositivitySamples;
  std::vector<bool> positive(n);
  std::size_t count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    positive[i] = bracket(w.grid_point(i, n)) > 0.0;
    count += positive[i] ? 1 : 0;
  }
  if (count == n) return w.domain();
  if (count == 0) return std::nullopt;
  // bracket is monotone in z, so the positive samples form a prefix or suffix
  const bool upper_side = positive[n - 1];
  std::size_t boundary = 0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (positive[i] != positive[i + 1]) {
      boundary = i;
      break;
    }
  }
  double bad = w.grid_point(upper_side ? boundary : boundary + 1, n);
  double good = w.grid_point(upper_side ? boundary + 1 : boundary, n);
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = bad + 0.5 * (good - bad);
    if (mid == bad || mid == good) break;
    if (bracket(mid) > 0.0) {
      good = mid;
    } else {
      bad = mid;
    }
  }
  Interval narrowed = w.domain();
  if (upper_side) {
    narrowed.lo = bad;
    narrowed.lo_open = true;
  } else {
    narrowed.hi = bad;
    narrowed.hi_open = true;
  }
  return narrowed;
}

RuleSpec assemble(RuleInfo info, ScaleFunction F, ScaleFunction f, ScaleFunction g, Op op, RuleKind kind) {
  require_monotone("F", F);
  require_monotone("f", f);
  require_monotone("g", g);
  Interval domain = require_result_domain(F, f, g, op);
  const bool shared = same_function(F, f);
  return RuleSpec{
      .name = std::move(info.name),
      .F = std::move(F),
      .f = std::move(f),
      .g = std::move(g),
      .op = op,
      .shares_F_f = shared,
      .description = std::move(info.description),
      .result_domain = domain,
      .kind = kind,
      .alpha = std::nullopt,
      .bilinear = std::nullopt,
      .product = std::nullopt,
      .notes = {},
  };
}

}  // namespace

RuleSpec compile_direct(const ScaleFunction& F, const ScaleFunction& f, const ScaleFunction& g, Op op,
                        RuleInfo info) {
  return assemble(std::move(info), F, f, g, op, RuleKind::Direct);
}

RuleSpec compile_bilinear(const BilinearForm& form, RuleInfo info) {
  if (form.a == 0.0) throw ZeroA();
  require_monotone("u", form.u);
  require_monotone("v", form.v);
  require_monotone("w", form.w);
  if (form.d == 0.0) {
    throw NotMonotone("d = 0: the relation does not depend on w(z), so F is constant", form.w.lower());
  }
  const BilinearConstants k = constants_of(form);

  if (auto bad = first_nonpositive(form.u, [&](double u) { return u + k.cu; })) {
    throw PositivityViolation(kBracketX, bad->at, bad->value);
  }
  if (auto bad = first_nonpositive(form.v, [&](double v) { return v + k.bv; })) {
    throw PositivityViolation(kBracketY, bad->at, bad->value);
  }
  auto z_domain = feasible_z_domain(form.w, k);
  if (!z_domain) {
    const double z = form.w.lower();
    throw PositivityViolation(kBracketZ, z, k.k + k.m * form.w.evaluate_unchecked(z));
  }

  BilinearForm stored = form;
  std::vector<std::string> notes;
  if (!(*z_domain == form.w.domain())) {
    stored.w = ScaleFunction::create(form.w.expr(), form.w.variable(), *z_domain, form.w.params());
    notes.push_back("effective " + form.w.variable() + " domain narrowed from " +
                    form.w.domain().to_string() + " to " + z_domain->to_string() +
                    " where " + kBracketZ + " > 0");
  }

  ScaleFunction f = ScaleFunction::create(ln(add_constant(form.u.expr(), k.cu)), form.u.variable(),
                                          form.u.domain(), form.u.params());
  ScaleFunction g = ScaleFunction::create(ln(add_constant(form.v.expr(), k.bv)), form.v.variable(),
                                          form.v.domain(), form.v.params());
  Expr z_arg = scale_by(k.m, stored.w.expr());
  if (k.k != 0.0) {
    z_arg = k.m > 0.0 ? Expr::binary(BinaryOp::Add, Expr::number(k.k), scale_by(k.m, stored.w.expr()))
                      : Expr::binary(BinaryOp::Sub, Expr::number(k.k), scale_by(-k.m, stored.w.expr()));
  }
  ScaleFunction F = ScaleFunction::create(ln(std::move(z_arg)), stored.w.variable(), stored.w.domain(),
                                          stored.w.params());

  RuleSpec rule = assemble(std::move(info), std::move(F), std::move(f), std::move(g), Op::Plus,
                           RuleKind::Bilinear);
  rule.bilinear = std::move(stored);
  rule.notes = std::move(notes);
  return rule;
}

namespace {

Expr odds_log(const Expr& e) {
  // ln((1 - e)/(1 + e))
  return ln(Expr::binary(BinaryOp::Div, Expr::binary(BinaryOp::Sub, Expr::number(1.0), e),
                         Expr::binary(BinaryOp::Add, Expr::number(1.0), e)));
}

void require_unit_bounded(const char* name, const ScaleFunction& fn) {
  if (auto bad = first_nonpositive(fn, [](double t) { return 1.0 - std::abs(t); })) {
    throw PositivityViolation(std::string("(1 - ") + name + ")/(1 + " + name + ")", bad->at, bad->value);
  }
}

}  // namespace

RuleSpec compile_product_form(const ScaleFunction& u, const ScaleFunction& v, const ScaleFunction& w,
                              RuleInfo info) {
  require_monotone("u", u);
  require_monotone("v", v);
  require_monotone("w", w);
  require_unit_bounded("u", u);
  require_unit_bounded("v", v);
  require_unit_bounded("w", w);
  ScaleFunction f = ScaleFunction::create(odds_log(u.expr()), u.variable(), u.domain(), u.params());
  ScaleFunction g = ScaleFunction::create(odds_log(v.expr()), v.variable(), v.domain(), v.params());
  ScaleFunction F =
      ScaleFunction::create(Expr::negate(odds_log(w.expr())), w.variable(), w.domain(), w.params());
  RuleSpec rule =
      assemble(std::move(info), std::move(F), std::move(f), std::move(g), Op::Plus, RuleKind::Product);
  rule.product = ProductForm{u, v, w};
  return rule;
}

namespace {

/// Canonical spelling of x^alpha: 1/x, sqrt(x), 1/sqrt(x), x^n, or x^alpha.
std::pair<Expr, ParamMap> power_expression(double alpha) {
  const Expr x = Expr::variable("x");
  if (alpha == -1.0) return {Expr::binary(BinaryOp::Div, Expr::number(1.0), x), {}};
  if (alpha == 0.5) return {Expr::call(Intrinsic::Sqrt, {x}), {}};
  if (alpha == -0.5) {
    return {Expr::binary(BinaryOp::Div, Expr::number(1.0), Expr::call(Intrinsic::Sqrt, {x})), {}};
  }
  if (alpha == std::round(alpha) && std::abs(alpha) <= 64.0) {
    return {Expr::binary(BinaryOp::Pow, x, Expr::number(alpha)), {}};
  }
  return {Expr::binary(BinaryOp::Pow, x, Expr::parameter("alpha")), ParamMap{{"alpha", alpha}}};
}

}  // namespace

RuleSpec compile_power_rule(double alpha, Op op, Interval domain, RuleInfo info) {
  if (alpha == 0.0) throw ZeroAlpha();
  if (!std::isfinite(alpha)) throw DomainError("power rule exponent must be finite", alpha);
  if (domain.lo < 0.0) {
    throw DomainError("power rule domain " + domain.to_string() + " must lie within [0, inf)", domain.lo);
  }
  auto [expr, params] = power_expression(alpha);
  ScaleFunction fn = ScaleFunction::create(std::move(expr), "x", domain, std::move(params));
  if (info.description.empty()) {
    const std::string a = format_number(alpha);
    info.description = "z^" + a + " = x^" + a + " " + op_symbol(op) + " y^" + a;
  }
  RuleSpec rule = assemble(std::move(info), fn, fn, fn, op, RuleKind::Power);
  rule.alpha = alpha;
  return rule;
}

// ---------------------------------------------------------------------------
// validation

namespace {

void check_scale(const char* subject, const ScaleFunction& fn, std::vector<Diagnostic>& out) {
  try {
    const MonotoneReport report = check_monotone(fn);
    if (!report.ok) {
      out.push_back({"NotMonotone", violation_text(subject, fn, report), subject,
                     report.first_violation->x0});
    }
  } catch (const EvalError& e) {
    out.push_back({"EvalError", std::string(subject) + ": " + e.what(), subject, e.at()});
  }
}

void check_bracket(const char* subject, const char* bracket_name, const ScaleFunction& fn,
                   const std::function<double(double)>& bracket, std::vector<Diagnostic>& out) {
  try {
    if (auto bad = first_nonpositive(fn, bracket)) {
      out.push_back({"PositivityViolation", PositivityViolation(bracket_name, bad->at, bad->value).what(),
                     subject, bad->at});
    }
  } catch (const EvalError& e) {
    out.push_back({"EvalError", std::string(subject) + ": " + e.what(), subject, e.at()});
  }
}

}  // namespace

std::vector<Diagnostic> validate_rule(const RuleSpec& rule) {
  std::vector<Diagnostic> out;
  check_scale("F", rule.F, out);
  check_scale("f", rule.f, out);
  check_scale("g", rule.g, out);

  if (rule.shares_F_f && !same_function(rule.F, rule.f)) {
    out.push_back({"SharedScaleMismatch", "rule claims F = f but they differ: F = " + rule.F.to_string() +
                                              ", f = " + rule.f.to_string(),
                   "F", std::nullopt});
  }

  try {
    if (!result_domain(rule.F, rule.f, rule.g, rule.op)) {
      const Span r = reachable(rule.f, rule.g, rule.op);
      out.push_back({"EmptyRule", "reachable set [" + format_number(r.lo) + ", " + format_number(r.hi) +
                                      "] misses the range of F",
                     "", std::nullopt});
    }
  } catch (const Error& e) {
    out.push_back({e.kind(), e.what(), "F", std::nullopt});
  }

  if (rule.bilinear) {
    const BilinearForm& form = *rule.bilinear;
    if (form.a == 0.0) {
      out.push_back({"ZeroA", ZeroA().what(), "", std::nullopt});
    } else {
      const BilinearConstants k = constants_of(form);
      check_bracket("u", kBracketX, form.u, [&](double u) { return u + k.cu; }, out);
      check_bracket("v", kBracketY, form.v, [&](double v) { return v + k.bv; }, out);
      check_bracket("w", kBracketZ, form.w, [&](double w) { return k.k + k.m * w; }, out);
    }
  }
  if (rule.product) {
    auto unit = [](double t) { return 1.0 - std::abs(t); };
    check_bracket("u", "(1 - u)/(1 + u)", rule.product->u, unit, out);
    check_bracket("v", "(1 - v)/(1 + v)", rule.product->v, unit, out);
    check_bracket("w", "(1 - w)/(1 + w)", rule.product->w, unit, out);
  }
  if (rule.kind == RuleKind::Power && rule.alpha && *rule.alpha == 0.0) {
    out.push_back({"ZeroAlpha", ZeroAlpha().what(), "", std::nullopt});
  }
  return out;
}

}  // namespace sliderule
