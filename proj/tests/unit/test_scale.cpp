#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "sliderule/errors.hpp"
#include "sliderule/scale.hpp"

using namespace sliderule;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

TEST(Interval, Printing) {
  EXPECT_EQ(Interval::closed(0, 10).to_string(), "[0, 10]");
  EXPECT_EQ((Interval{1, kInf, false, true}).to_string(), "[1, inf)");
  EXPECT_TRUE((Interval{1, kInf, false, true}).hi_infinite());
}

TEST(ScaleFunction, DetectsDirection) {
  auto inc = ScaleFunction::parse("x^2", "x", Interval::closed(0, 10));
  auto dec = ScaleFunction::parse("1/x", "x", Interval::closed(1, 10));
  EXPECT_EQ(inc.direction(), Direction::Increasing);
  EXPECT_EQ(dec.direction(), Direction::Decreasing);
  EXPECT_DOUBLE_EQ(inc.value_max(), 100);
  EXPECT_DOUBLE_EQ(dec.value_min(), 0.1);
}

TEST(ScaleFunction, RejectsNonMonotone) {
  try {
    ScaleFunction::parse("sin(x)", "x", Interval::closed(0, 4));
    FAIL();
  } catch (const NotMonotone& e) {
    EXPECT_GT(e.witness(), 1.4);
    EXPECT_LT(e.witness(), 1.8);
  }
  EXPECT_THROW(ScaleFunction::parse("x^2", "x", Interval::closed(-1, 1)), NotMonotone);
  EXPECT_THROW(ScaleFunction::parse("3", "x", Interval::closed(0, 1)), NotMonotone);
}

TEST(ScaleFunction, UndefinedInsideDomain) {
  EXPECT_THROW(ScaleFunction::parse("ln(x)", "x", Interval::closed(-1, 1)), EvalError);
}

TEST(ScaleFunction, DomainCheck) {
  auto fn = ScaleFunction::parse("x^2", "x", Interval::closed(0, 10));
  EXPECT_DOUBLE_EQ(fn(3), 9);
  EXPECT_THROW(fn(11), DomainError);
  EXPECT_THROW(fn(-0.5), DomainError);
}

TEST(ScaleFunction, OpenAndInfiniteEnds) {
  auto fn = ScaleFunction::parse("1/x", "x", Interval{1, kInf, false, true});
  EXPECT_DOUBLE_EQ(fn.lower(), 1);
  EXPECT_GE(fn.upper(), 1e12);
  EXPECT_TRUE(std::isfinite(fn.upper()));
  EXPECT_TRUE(fn.contains(1e9));
  EXPECT_FALSE(fn.contains(0.5));

  auto open = ScaleFunction::parse("x", "x", Interval::open(-0.9, 0.9));
  EXPECT_GT(open.lower(), -0.9);
  EXPECT_LT(open.upper(), 0.9);
  EXPECT_FALSE(open.contains(0.9));
}

TEST(ScaleFunction, GridAndFraction) {
  auto fn = ScaleFunction::parse("x", "x", Interval::closed(2, 4));
  EXPECT_DOUBLE_EQ(fn.grid_point(0, 5), 2);
  EXPECT_DOUBLE_EQ(fn.grid_point(2, 5), 3);
  EXPECT_DOUBLE_EQ(fn.grid_point(4, 5), 4);
  EXPECT_DOUBLE_EQ(fn.at_fraction(0.25), 2.5);
}

TEST(Invert, RecoversArgument) {
  auto fn = ScaleFunction::parse("ln(x)", "x", Interval::closed(1, 1000));
  for (double x : {1.0, 1.5, 2.0, 10.0, 999.0, 1000.0}) EXPECT_NEAR(invert_scale_fn(fn, std::log(x)), x, 1e-10 * x);
  EXPECT_THROW(invert_scale_fn(fn, 10.0), RangeError);
  EXPECT_THROW(invert_scale_fn(fn, -0.5), RangeError);
  EXPECT_THROW(invert_scale_fn(fn, std::nan("")), RangeError);
}

TEST(Invert, DecreasingFunction) {
  auto fn = ScaleFunction::parse("1/x", "x", Interval{1, kInf, false, true});
  EXPECT_NEAR(invert_scale_fn(fn, 0.5), 2, 1e-12);
  EXPECT_NEAR(invert_scale_fn(fn, 1e-6), 1e6, 1e-3);
}

TEST(Scale, FittedStrip) {
  Scale s(ScaleFunction::parse("ln(x)", "x", Interval::closed(1, 10)), 250);
  EXPECT_NEAR(position_of(s, 1), 0, 1e-12);
  EXPECT_NEAR(position_of(s, 10), 250, 1e-12);
  EXPECT_NEAR(value_at(s, 125), std::sqrt(10.0), 1e-12);
  EXPECT_THROW(value_at(s, 251), RangeError);
  EXPECT_THROW(position_of(s, 11), DomainError);
}

TEST(Scale, AlignedReversed) {
  auto fn = ScaleFunction::parse("x^2", "x", Interval::closed(0, 10));
  Scale s = Scale::aligned(fn, 2.5, 0.0, true);
  EXPECT_NEAR(position_of(s, 3), -22.5, 1e-12);
  EXPECT_NEAR(value_at(s, -22.5), 3, 1e-12);
  EXPECT_NEAR(s.start_mm(), -250, 1e-12);
  EXPECT_NEAR(s.end_mm(), 0, 1e-12);
}
