#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "oracles.hpp"
#include "sliderule/catalog.hpp"
#include "sliderule/compiler.hpp"
#include "sliderule/errors.hpp"
#include "sliderule/simulator.hpp"

using namespace sliderule;

namespace {

double run(const RuleSpec& r, double x, double y, ReadingModel m = {}, double length = kDefaultLengthMm) {
  return read_result(slide_set(RuleState::make(r, length), x), y, m);
}

}  // namespace

TEST(RuleState, StripsShareUnitAndOrigin) {
  RuleSpec r = builtin("quadplus").rule;
  RuleState s = RuleState::make(r, 250);
  EXPECT_NEAR(s.mm_per_unit(), 250.0 / 400.0, 1e-15);
  EXPECT_NEAR(position_of(s.stator(), 0), 0, 1e-12);
  EXPECT_NEAR(position_of(s.slide(), 0), 0, 1e-12);
  EXPECT_NEAR(position_of(s.stator(), 20), 250, 1e-9);
  EXPECT_DOUBLE_EQ(s.offset_mm(), 0);
}

TEST(SlideSet, MovesOriginToMark) {
  RuleSpec r = builtin("quadplus").rule;
  RuleState s = slide_set(RuleState::make(r), 3);
  EXPECT_NEAR(s.offset_mm(), 9 * s.mm_per_unit(), 1e-12);
  EXPECT_THROW(slide_set(RuleState::make(r), 25), DomainError);
}

TEST(ReadResult, ReplusAndQuadplus) {
  EXPECT_NEAR(run(builtin("replus").rule, 3, 6), 2, 1e-12);
  EXPECT_NEAR(run(builtin("quadplus").rule, 3, 4), 5, 1e-12);
}

TEST(ReadResult, SubtractionRunsOnReversedSlide) {
  RuleSpec r = compile_power_rule(2, Op::Minus, Interval::closed(0, 10));
  RuleState s = RuleState::make(r);
  EXPECT_TRUE(s.slide().reversed());
  EXPECT_NEAR(run(r, 5, 4), 3, 1e-12);
  EXPECT_NEAR(run(r, 5, 3), 4, 1e-12);
}

TEST(ReadResult, OffScaleReportsOvershoot) {
  RuleSpec r = builtin("quadplus").rule;
  try {
    run(r, 20, 20);
    FAIL();
  } catch (const OffScale& e) {
    EXPECT_NEAR(e.needed_mm(), 500, 1e-9);
    EXPECT_NEAR(e.available_mm(), 250, 1e-9);
    EXPECT_NEAR(e.overshoot_mm(), 250, 1e-9);
    EXPECT_FALSE(e.step());
  }
  EXPECT_THROW(run(r, 3, 21), DomainError);
}

TEST(ReadResult, QuantizedReadingIsCloseButNotExact) {
  RuleSpec r = builtin("product_xy").rule;
  double z = run(r, 3.3, 2.7, ReadingModel{0.1});
  EXPECT_NE(z, 3.3 * 2.7);
  EXPECT_NEAR(z, 3.3 * 2.7, 3.3 * 2.7 * 2.5e-3);
}

TEST(ReadingModel, Quantize) {
  ReadingModel m{0.1};
  EXPECT_NEAR(m.quantize(12.34), 12.3, 1e-12);
  EXPECT_NEAR(m.quantize(12.36), 12.4, 1e-12);
  EXPECT_DOUBLE_EQ(ReadingModel::ideal().quantize(12.3456789), 12.3456789);
}

TEST(Chain, RepeatedMovements) {
  const double xs[] = {2, 3, 6};
  EXPECT_NEAR(chain(builtin("replus").rule, xs), 1, 1e-12);
  const double qs[] = {1, 2, 2};
  EXPECT_NEAR(chain(builtin("quadplus").rule, qs), 3, 1e-12);
}

TEST(Chain, Errors) {
  const double one[] = {2};
  EXPECT_THROW(chain(builtin("replus").rule, one), ChainUnsupported);
  const double two[] = {2, 3};
  EXPECT_THROW(chain(builtin("product_xy").rule, two), ChainUnsupported);  // F != f
  EXPECT_THROW(chain(builtin("quadratic_solver").rule, two), ChainUnsupported);
  const double big[] = {15, 15, 15};
  try {
    chain(builtin("quadplus").rule, big);
    FAIL();
  } catch (const OffScale& e) {
    ASSERT_TRUE(e.step());
    EXPECT_EQ(*e.step(), 1u);
  }
}

TEST(PowerMean, MatchesOracle) {
  const std::vector<std::vector<double>> sets = {{2, 8}, {3, 4}, {1, 2, 3, 4, 5}, {0.5, 40}, {7}};
  for (double alpha : {-2.0, -1.0, -0.5, 0.5, 1.0, 2.0, 3.0})
    for (const auto& xs : sets)
      EXPECT_NEAR(power_mean(xs, alpha), oracle::power_mean(xs, alpha), 1e-9 * oracle::power_mean(xs, alpha))
          << alpha;
  const double hm[] = {2, 8};
  EXPECT_NEAR(power_mean(hm, -1), oracle::harmonic_mean(hm), 1e-12);
}

TEST(PowerMean, Errors) {
  EXPECT_THROW(power_mean(std::vector<double>{}, 2), Error);
  EXPECT_THROW(power_mean(std::vector<double>{1, -2}, 2), DomainError);
  EXPECT_THROW(power_mean(std::vector<double>{1, 2}, 0), ZeroAlpha);
}

TEST(ErrorProfile, IdealReadingIsExact) {
  std::vector<double> g = {1.5, 2, 3, 4.5};
  ErrorProfile p = error_profile(builtin("product_xy").rule, g, g, {});
  EXPECT_EQ(p.readable, 16u);
  EXPECT_LT(p.max_rel_err, 1e-12);
}

TEST(ErrorProfile, CountsOffScale) {
  std::vector<double> g = {5, 15, 19};
  ErrorProfile p = error_profile(builtin("quadplus").rule, g, g, ReadingModel{0.1});
  EXPECT_EQ(p.rows.size(), 9u);
  EXPECT_EQ(p.off_scale + p.readable, 9u);
  EXPECT_GT(p.off_scale, 0u);
}

TEST(ErrorProfile, Csv) {
  std::vector<double> g = {15, 19};
  ErrorProfile p = error_profile(builtin("quadplus").rule, g, g, ReadingModel{0.1});
  std::ostringstream out;
  write_profile_csv(out, p);
  const std::string csv = out.str();
  EXPECT_EQ(csv.rfind("x,y,z_exact,z_read,rel_err\n", 0), 0u);
  EXPECT_NE(csv.find("OFF_SCALE"), std::string::npos);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 5);
}

TEST(SlideSet, OffsetIsStatorMarkPosition) {
  RuleState rep = RuleState::make(builtin("replus").rule);
  EXPECT_NEAR(slide_set(rep, 3).offset_mm(), position_of(rep.stator_f(), 3), 1e-12);
  EXPECT_NEAR(slide_set(RuleState::make(builtin("quadplus").rule), 0).offset_mm(), 0, 1e-12);
  EXPECT_NEAR(slide_set(RuleState::make(builtin("product_xy").rule), 1).offset_mm(), 0, 1e-12);
}
