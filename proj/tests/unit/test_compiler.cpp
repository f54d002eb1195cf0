#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "oracles.hpp"
#include "sliderule/compiler.hpp"
#include "sliderule/errors.hpp"

using namespace sliderule;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

ScaleFunction lin(const char* var, double lo, double hi) { return ScaleFunction::parse(var, var, Interval::closed(lo, hi)); }

bool has_kind(const std::vector<Diagnostic>& ds, const std::string& kind) {
  for (const auto& d : ds)
    if (d.kind == kind) return true;
  return false;
}

}  // namespace

TEST(CompileDirect, LogMultiplication) {
  auto F = ScaleFunction::parse("ln(z)", "z", Interval::closed(1, 100));
  auto f = ScaleFunction::parse("ln(x)", "x", Interval::closed(1, 10));
  auto g = ScaleFunction::parse("ln(y)", "y", Interval::closed(1, 10));
  RuleSpec r = compile_direct(F, f, g, Op::Plus, {"mul"});
  EXPECT_EQ(r.kind, RuleKind::Direct);
  EXPECT_FALSE(r.shares_F_f);
  EXPECT_NEAR(r.evaluate(3, 7), 21, 1e-9);
  RuleSpec q = compile_direct(F, f, g, Op::Minus, {"div"});
  EXPECT_NEAR(q.evaluate(8, 2), 4, 1e-9);
}

TEST(CompileDirect, SharedScaleDetected) {
  auto f = ScaleFunction::parse("x^2", "x", Interval::closed(0, 10));
  auto F = ScaleFunction::parse("z^2", "z", Interval::closed(0, 10));
  EXPECT_TRUE(compile_direct(F, f, f, Op::Plus).shares_F_f);
  auto G = ScaleFunction::parse("z^2", "z", Interval::closed(0, 20));
  EXPECT_FALSE(compile_direct(G, f, f, Op::Plus).shares_F_f);
}

TEST(CompileDirect, EmptyResultDomain) {
  auto F = ScaleFunction::parse("z", "z", Interval::closed(100, 200));
  EXPECT_THROW(compile_direct(F, lin("x", 0, 1), lin("y", 0, 1), Op::Plus), EmptyRule);
}

TEST(CompileBilinear, MultiplicationAsBilinear) {
  // x*y - z = 0
  BilinearForm form{1, 0, 0, -1, 0, lin("x", 1, 10), lin("y", 1, 10), lin("z", 1, 100)};
  RuleSpec r = compile_bilinear(form, {"xy"});
  EXPECT_EQ(r.kind, RuleKind::Bilinear);
  EXPECT_NEAR(r.evaluate(3, 4), 12, 1e-9);
}

TEST(CompileBilinear, ShiftedForm) {
  // 2uv + 3u - v + 2w - 1 = 0, brackets u - 1/2 and v + 3/2.
  BilinearForm form{2, 3, -1, 2, -1, lin("x", 1, 5), lin("y", 0, 4), lin("z", -200, 50)};
  RuleSpec r = compile_bilinear(form);
  for (double x : {1.0, 2.5, 5.0})
    for (double y : {0.0, 1.0, 4.0}) {
      double z = r.evaluate(x, y);
      EXPECT_NEAR(2 * x * y + 3 * x - y + 2 * z - 1, 0, 1e-9) << x << ' ' << y;
    }
  EXPECT_FALSE(r.notes.empty());  // w was narrowed to its positive bracket
}

TEST(CompileBilinear, Errors) {
  BilinearForm zero{0, 1, 1, -1, 0, lin("x", 1, 2), lin("y", 1, 2), lin("z", 0, 10)};
  EXPECT_THROW(compile_bilinear(zero), ZeroA);
  BilinearForm no_d{1, 0, 0, 0, 0, lin("x", 1, 2), lin("y", 1, 2), lin("z", 0, 10)};
  EXPECT_THROW(compile_bilinear(no_d), NotMonotone);
  BilinearForm neg{1, 0, 0, -1, 0, lin("x", -1, 2), lin("y", 1, 2), lin("z", -10, 10)};
  try {
    compile_bilinear(neg);
    FAIL();
  } catch (const PositivityViolation& e) {
    EXPECT_LE(e.witness(), 0.0);
  }
}

TEST(CompileProduct, SatisfiesRelation) {
  Interval d = Interval::open(-0.9, 0.9);
  RuleSpec r = compile_product_form(lin("x", -0.5, 0.5), lin("y", -0.5, 0.5),
                                    ScaleFunction::parse("z", "z", d));
  for (double x : {-0.5, 0.0, 0.3})
    for (double y : {-0.4, 0.2, 0.5}) {
      double z = r.evaluate(x, y);
      EXPECT_NEAR(x * y * z + x + y + z, 0, 1e-12);
    }
  EXPECT_THROW(compile_product_form(lin("x", -2, 0.5), lin("y", 0, 0.5), lin("z", -0.9, 0.9)), PositivityViolation);
}

TEST(CompilePower, SpecialExponents) {
  RuleSpec rec = compile_power_rule(-1, Op::Plus, Interval{1, kInf, false, true});
  EXPECT_NEAR(rec.evaluate(3, 6), oracle::replus(3, 6), 1e-12);
  EXPECT_TRUE(rec.shares_F_f);
  EXPECT_EQ(rec.kind, RuleKind::Power);
  EXPECT_EQ(rec.alpha, -1.0);

  RuleSpec quad = compile_power_rule(2, Op::Plus, Interval::closed(0, 20));
  EXPECT_NEAR(quad.evaluate(3, 4), 5, 1e-12);
  RuleSpec diff = compile_power_rule(2, Op::Minus, Interval::closed(0, 20));
  EXPECT_NEAR(diff.evaluate(5, 4), 3, 1e-12);

  RuleSpec odd = compile_power_rule(1.7, Op::Plus, Interval::closed(0, 20));
  EXPECT_NEAR(odd.evaluate(2, 3.5), std::pow(std::pow(2, 1.7) + std::pow(3.5, 1.7), 1 / 1.7), 1e-10);

  EXPECT_THROW(compile_power_rule(0, Op::Plus, Interval::closed(1, 2)), ZeroAlpha);
  EXPECT_THROW(compile_power_rule(2, Op::Plus, Interval::closed(-1, 2)), DomainError);
}

TEST(Validate, CleanRuleHasNoDiagnostics) {
  EXPECT_TRUE(validate_rule(compile_power_rule(2, Op::Plus, Interval::closed(0, 10))).empty());
}

TEST(Validate, ReportsBrokenParts) {
  RuleSpec r = compile_power_rule(2, Op::Plus, Interval::closed(0, 10));
  r.F = ScaleFunction::unchecked(parse_expression("sin(z)", {"z", {}}), "z", Interval::closed(0, 4));
  EXPECT_TRUE(has_kind(validate_rule(r), "NotMonotone"));

  RuleSpec s = compile_power_rule(2, Op::Plus, Interval::closed(0, 10));
  s.shares_F_f = true;
  s.f = lin("x", 0, 10);
  EXPECT_TRUE(has_kind(validate_rule(s), "SharedScaleMismatch"));
}
