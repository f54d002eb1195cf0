#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "sliderule/catalog.hpp"
#include "sliderule/compiler.hpp"
#include "sliderule/errors.hpp"
#include "sliderule/layout.hpp"
#include "sliderule/sheet.hpp"
#include "sliderule/simulator.hpp"

using namespace sliderule;

namespace {

std::mt19937_64& rng() {
  static std::mt19937_64 r(12345);
  return r;
}

double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng()); }

double run(const RuleState& base, double x, double y, ReadingModel m = {}) {
  return read_result(slide_set(base, x), y, m);
}

int sign(Direction d) { return d == Direction::Increasing ? 1 : -1; }

}  // namespace

TEST(Property, PowerRulesMatchClosedForm) {
  for (int trial = 0; trial < 40; ++trial) {
    const double alpha = uniform(0.5, 3) * (trial % 2 ? -1 : 1);
    RuleSpec r = compile_power_rule(alpha, Op::Plus, Interval::closed(0.5, 50));
    RuleState base = RuleState::make(r);
    for (int k = 0; k < 20; ++k) {
      const double x = uniform(0.5, 20), y = uniform(0.5, 20);
      const double want = std::pow(std::pow(x, alpha) + std::pow(y, alpha), 1 / alpha);
      if (!r.F.contains(want)) continue;
      EXPECT_NEAR(run(base, x, y), want, 1e-9 * want) << "alpha=" << alpha << " x=" << x << " y=" << y;
    }
  }
}

TEST(Property, SharedScaleRulesCommute) {
  for (const char* name : {"replus", "quadplus", "tangent_circles", "serial_inductors", "power"}) {
    CatalogEntry e = builtin(name);
    RuleState base = RuleState::make(e.rule);
    for (int k = 0; k < 50; ++k) {
      const double x = e.rule.f.at_fraction(uniform(0, 0.5)), y = e.rule.g.at_fraction(uniform(0, 0.5));
      try {
        const double z = run(base, x, y);
        EXPECT_NEAR(z, run(base, y, x), 1e-9 * std::abs(z)) << name;
      } catch (const OffScale&) {
      }
    }
  }
}

TEST(Property, ResultMonotoneInSecondArgument) {
  for (const auto& name : builtin_names()) {
    CatalogEntry e = builtin(name);
    const RuleSpec& r = e.rule;
    RuleState base = RuleState::make(r);
    const int s = sign(r.F.direction()) * sign(r.g.direction()) * (r.op == Op::Plus ? 1 : -1);
    for (int trial = 0; trial < 10; ++trial) {
      const double x = r.f.at_fraction(uniform(0.3, 0.7));
      double prev = NAN;
      for (int j = 0; j <= 20; ++j) {
        const double y = r.g.at_fraction(0.2 + 0.3 * j / 20.0);
        try {
          e.check_inputs(x, y);
          const double z = run(base, x, y);
          if (!std::isnan(prev)) EXPECT_GT(s * (z - prev), 0) << name << " x=" << x << " y=" << y;
          prev = z;
        } catch (const Error&) {
          prev = NAN;
        }
      }
    }
  }
}

TEST(Property, QuantizedHairlineWithinOneResolution) {
  for (const char* name : {"product_xy", "replus", "quadplus", "lorentz"}) {
    const RuleSpec r = builtin(name).rule;
    RuleState base = RuleState::make(r);
    for (double res : {0.05, 0.1, 0.5}) {
      for (int k = 0; k < 100; ++k) {
        const double x = r.f.at_fraction(uniform(0, 0.4)), y = r.g.at_fraction(uniform(0, 0.4));
        double read, exact;
        try {
          read = run(base, x, y, ReadingModel{res});
          exact = run(base, x, y);
        } catch (const OffScale&) {
          continue;
        }
        const double d = std::abs(position_of(base.stator(), read) - position_of(base.stator(), exact));
        EXPECT_LE(d, res + 1e-9) << name << " x=" << x << " y=" << y;
      }
    }
  }
}

TEST(Property, ChainMatchesPowerSum) {
  RuleSpec r = compile_power_rule(2, Op::Plus, Interval::closed(0, 100));
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> xs(2 + trial % 5);
    for (auto& x : xs) x = uniform(0.5, 30);
    double ss = 0;
    for (double x : xs) ss += x * x;
    if (std::sqrt(ss) > 100) continue;
    EXPECT_NEAR(chain(r, xs), std::sqrt(ss), 1e-9 * std::sqrt(ss));
  }
}

TEST(Property, PowerMeanBetweenMinAndMax) {
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> xs(1 + trial % 6);
    for (auto& x : xs) x = uniform(0.1, 100);
    const double alpha = trial % 2 ? uniform(0.2, 3) : -uniform(0.2, 3);
    const double h = power_mean(xs, alpha);
    EXPECT_GE(h, *std::min_element(xs.begin(), xs.end()) * (1 - 1e-12));
    EXPECT_LE(h, *std::max_element(xs.begin(), xs.end()) * (1 + 1e-12));
    EXPECT_NEAR(h, oracle::power_mean(xs, alpha), 1e-9 * h);
  }
}

TEST(Property, BilinearFormsSatisfyRelation) {
  for (int trial = 0; trial < 30; ++trial) {
    const double a = uniform(0.5, 3) * (trial % 2 ? -1 : 1);
    const double b = uniform(-3, 3), c = uniform(-3, 3), d = uniform(0.5, 3) * (trial % 3 ? 1 : -1), e = uniform(-3, 3);
    const double xlo = -c / a + uniform(0.2, 1), ylo = -b / a + uniform(0.2, 1);
    auto u = ScaleFunction::parse("x", "x", Interval::closed(xlo, xlo + uniform(1, 5)));
    auto v = ScaleFunction::parse("y", "y", Interval::closed(ylo, ylo + uniform(1, 5)));
    auto w = ScaleFunction::parse("z", "z", Interval::closed(-1e3, 1e3));
    RuleSpec r = compile_bilinear({a, b, c, d, e, u, v, w});
    for (int k = 0; k < 20; ++k) {
      const double x = u.at_fraction(uniform(0, 1)), y = v.at_fraction(uniform(0, 1));
      const double z = r.evaluate(x, y);
      EXPECT_NEAR(a * x * y + b * x + c * y + d * z + e, 0, 1e-8) << trial;
    }
  }
}

TEST(Property, CatalogLayoutsAreValid) {
  TickPolicy policy;
  for (const auto& name : builtin_names()) {
    RuleState s = RuleState::make(builtin(name).rule);
    for (const Scale* strip : {&s.stator(), &s.stator_f(), &s.slide()}) {
      TickLayout l = generate_ticks(*strip, policy);
      EXPECT_TRUE(check_layout(l, *strip, policy).empty()) << name;
      for (const auto& t : l.ticks)
        if (std::isfinite(t.value)) EXPECT_NEAR(t.pos_mm, position_of(*strip, t.value), 1e-6) << name;
    }
  }
}

TEST(Property, SheetRoundTripsEveryEntry) {
  std::vector<RuleSpec> rules;
  for (const auto& name : builtin_names()) rules.push_back(builtin(name).rule);
  ScaleSheet sheet = export_sheet(rules);
  ScaleSheet back = parse_sheet(serialize_sheet(sheet));
  EXPECT_EQ(back, sheet);
  for (std::size_t i = 0; i < rules.size(); ++i) {
    RuleSpec r = rule_from_sheet(back.rules[i]);
    const double x = rules[i].f.at_fraction(0.3), y = rules[i].g.at_fraction(0.3);
    try {
      EXPECT_NEAR(r.evaluate(x, y), rules[i].evaluate(x, y), 1e-9 * std::abs(rules[i].evaluate(x, y)))
          << rules[i].name;
    } catch (const RangeError&) {
    }
  }
}

TEST(Property, CatalogExpressionsPrintAndParseBack) {
  for (const auto& name : builtin_names()) {
    const RuleSpec r = builtin(name).rule;
    for (const ScaleFunction* fn : {&r.F, &r.f, &r.g}) {
      const Expr back = parse_expression(fn->expr().to_string());
      EXPECT_EQ(back.to_string(), fn->expr().to_string()) << name;
      const double x = fn->at_fraction(0.37);
      EXPECT_EQ(back.resolve(fn->variable(), fn->params()).evaluate(x, fn->params()), fn->expr().evaluate(x, fn->params()))
          << name << ": " << fn->expr().to_string();
    }
  }
}
