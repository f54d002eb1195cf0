#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "sliderule/errors.hpp"
#include "sliderule/layout.hpp"

using namespace sliderule;

namespace {

Scale strip(const char* expr, Interval d, double length = 250) {
  return Scale(ScaleFunction::parse(expr, "x", d), length);
}

const Tick* find_value(const TickLayout& l, double v) {
  for (const auto& t : l.ticks)
    if (t.value == v) return &t;
  return nullptr;
}

}  // namespace

TEST(Ticks, LogScaleHasDecadesAndIntegers) {
  Scale s = strip("ln(x)", Interval::closed(1, 10));
  TickLayout l = generate_ticks(s, {}, "C");
  EXPECT_EQ(l.scale_ref, "C");
  for (int v = 1; v <= 10; ++v) {
    const Tick* t = find_value(l, v);
    ASSERT_NE(t, nullptr) << v;
    EXPECT_NEAR(t->pos_mm, position_of(s, v), 1e-9);
  }
  EXPECT_EQ(find_value(l, 1)->level, 0);
  EXPECT_EQ(find_value(l, 1)->label, "1");
  EXPECT_EQ(find_value(l, 10)->label, "10");
  EXPECT_TRUE(check_layout(l, s, {}).empty());
}

TEST(Ticks, SortedAndSpaced) {
  TickPolicy policy;
  for (auto [expr, d] : {std::pair{"x^2", Interval::closed(0, 20)}, std::pair{"1/x", Interval{1, INFINITY, false, true}},
                         std::pair{"ln(x)", Interval::closed(0.5, 2000)}, std::pair{"x", Interval::closed(-3, 7)},
                         std::pair{"sqrt(x)", Interval::closed(0, 100)}}) {
    Scale s = strip(expr, d);
    TickLayout l = generate_ticks(s, policy);
    ASSERT_GE(l.ticks.size(), 2u) << expr;
    for (std::size_t i = 1; i < l.ticks.size(); ++i) {
      EXPECT_LT(l.ticks[i - 1].pos_mm, l.ticks[i].pos_mm) << expr;
      EXPECT_GE(l.ticks[i].pos_mm - l.ticks[i - 1].pos_mm, policy.min_tick_spacing_mm - 1e-9) << expr;
    }
    EXPECT_TRUE(check_layout(l, s, policy).empty()) << expr;
  }
}

TEST(Ticks, InfinityMark) {
  Scale s = strip("1/x", Interval{1, INFINITY, false, true});
  TickLayout l = generate_ticks(s);
  const Tick* inf = find_value(l, std::numeric_limits<double>::infinity());
  ASSERT_NE(inf, nullptr);
  EXPECT_EQ(inf->label, "∞");
  EXPECT_EQ(inf->level, 0);
  EXPECT_NEAR(inf->pos_mm, 0, 1e-3);
}

TEST(Ticks, LabelsAreShortDecimals) {
  Scale s = strip("x", Interval::closed(0, 1));
  TickLayout l = generate_ticks(s);
  EXPECT_EQ(find_value(l, 0.5)->label, "0.5");
  for (const auto& t : l.ticks)
    if (!t.label.empty()) EXPECT_LE(t.label.size(), 4u) << t.label;
}

TEST(Ticks, LabelsKeepTheirSpacing) {
  TickPolicy policy;
  Scale s = strip("ln(x)", Interval::closed(1, 1000), 120);
  TickLayout l = generate_ticks(s, policy);
  double last = -1e9;
  for (const auto& t : l.ticks)
    if (!t.label.empty()) {
      EXPECT_GE(t.pos_mm - last, policy.min_label_spacing_mm - 1e-9);
      last = t.pos_mm;
    }
}

TEST(Ticks, Deterministic) {
  Scale s = strip("x^2", Interval::closed(0, 20));
  EXPECT_EQ(generate_ticks(s), generate_ticks(s));
}

TEST(Ticks, DegenerateScale) {
  // A 0.5 mm strip cannot hold two marks 0.6 mm apart.
  Scale s = strip("x", Interval::closed(1, 2), 0.5);
  EXPECT_THROW(generate_ticks(s), DegenerateScale);
}

TEST(CheckLayout, FlagsViolations) {
  Scale s = strip("x", Interval::closed(0, 10), 100);
  TickLayout l{"x", {{0, 0, "0", 0}, {0.1, 1, "", 0.01}, {50, 0, "5", 5}}};
  EXPECT_FALSE(check_layout(l, s, {}).empty());
  TickLayout unsorted{"x", {{50, 0, "5", 5}, {0, 0, "0", 0}}};
  EXPECT_FALSE(check_layout(unsorted, s, {}).empty());
}
