#include "sliderule/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "sliderule/compiler.hpp"
#include "sliderule/errors.hpp"
#include "sliderule/format.hpp"

namespace sliderule {

double ReadingModel::quantize(double pos_mm) const {
  if (!(resolution_mm > 0.0)) return pos_mm;
  return std::round(pos_mm / resolution_mm) * resolution_mm;
}

RuleState::RuleState(std::shared_ptr<const RuleSpec> rule, std::shared_ptr<const Strips> strips,
                     double offset)
    : rule_(std::move(rule)), strips_(std::move(strips)), offset_mm_(offset) {}

RuleState RuleState::make(const RuleSpec& rule, double length_mm) {
  if (!(length_mm > 0.0) || !std::isfinite(length_mm)) {
    throw std::invalid_argument("rule length must be positive");
  }
  const double span = rule.f.value_max() - rule.f.value_min();
  if (!(span > 0.0)) throw DegenerateScale("scale f of " + rule.name + " has zero span");
  const double k = length_mm / span;
  auto strips = std::make_shared<const Strips>(Strips{
      Scale::aligned(rule.F, k, 0.0, false),
      Scale::aligned(rule.f, k, 0.0, false),
      Scale::aligned(rule.g, k, 0.0, rule.op == Op::Minus),
      length_mm,
  });
  return RuleState(std::make_shared<const RuleSpec>(rule), std::move(strips), 0.0);
}

RuleState RuleState::with_offset(double offset_mm) const {
  if (!std::isfinite(offset_mm)) throw std::invalid_argument("slide offset must be finite");
  return RuleState(rule_, strips_, offset_mm);
}

RuleState slide_set(const RuleState& state, double x) {
  return state.with_offset(position_of(state.stator_f(), x));
}

double read_result(const RuleState& state, double y, const ReadingModel& model) {
  const double offset = model.quantize(state.offset_mm());
  const double hair = model.quantize(offset + position_of(state.slide(), y));
  const Scale& F = state.stator();
  const double slack = 1e-9 * std::max(1.0, F.length_mm());
  if (hair < F.start_mm() - slack) throw OffScale(hair, F.start_mm());
  if (hair > F.end_mm() + slack) throw OffScale(hair, F.end_mm());
  return value_at(F, hair);
}

double chain(const RuleSpec& rule, std::span<const double> xs, const ReadingModel& model, double length_mm) {
  if (rule.op != Op::Plus) throw ChainUnsupported("chaining needs op = +; " + rule.name + " subtracts");
  if (!rule.shares_F_f) {
    throw ChainUnsupported("chaining feeds z back as x, which needs F = f; " + rule.name + " has F != f");
  }
  if (xs.size() < 2) throw ChainUnsupported("chaining needs at least two values");
  RuleState state = RuleState::make(rule, length_mm);
  double z = xs[0];
  for (std::size_t i = 1; i < xs.size(); ++i) {
    try {
      z = read_result(slide_set(state, z), xs[i], model);
    } catch (const OffScale& e) {
      throw e.at_step(i);
    }
  }
  return z;
}

double power_mean(std::span<const double> xs, double alpha, const ReadingModel& model, double length_mm) {
  if (xs.empty()) throw DomainError("power mean of an empty list", 0.0);
  if (alpha == 0.0) throw ZeroAlpha();
  for (double x : xs) {
    if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("power mean needs positive values", x);
  }
  if (xs.size() == 1) return xs[0];
  const double root_n = std::pow(static_cast<double>(xs.size()), 1.0 / alpha);
  const auto [lo, hi] = std::minmax_element(xs.begin(), xs.end());
  const Interval domain = Interval::closed(*lo * std::min(1.0, root_n) / 2.0, *hi * std::max(1.0, root_n) * 2.0);
  const RuleSpec rule = compile_power_rule(alpha, Op::Plus, domain, {"power_mean", ""});
  return chain(rule, xs, model, length_mm) / root_n;
}

ErrorProfile error_profile(const RuleSpec& rule, std::span<const double> xs, std::span<const double> ys,
                           const ReadingModel& model, double length_mm) {
  ErrorProfile profile;
  const RuleState mounted = RuleState::make(rule, length_mm);
  double sum = 0.0;
  for (double x : xs) {
    const RuleState state = slide_set(mounted, x);
    for (double y : ys) {
      ProfileRow row{x, y, std::nullopt, std::nullopt, std::nullopt};
      try {
        row.z_exact = rule.evaluate(x, y);
      } catch (const RangeError&) {
      }
      try {
        row.z_read = read_result(state, y, model);
      } catch (const OffScale&) {
      }
      if (row.z_exact && row.z_read) {
        const double diff = std::abs(*row.z_read - *row.z_exact);
        row.rel_err = *row.z_exact != 0.0 ? diff / std::abs(*row.z_exact) : diff;
        profile.max_rel_err = std::max(profile.max_rel_err, *row.rel_err);
        sum += *row.rel_err;
        ++profile.readable;
      } else {
        ++profile.off_scale;
      }
      profile.rows.push_back(row);
    }
  }
  if (profile.readable > 0) profile.mean_rel_err = sum / static_cast<double>(profile.readable);
  return profile;
}

void write_profile_csv(std::ostream& out, const ErrorProfile& profile) {
  out << "x,y,z_exact,z_read,rel_err\n";
  for (const auto& row : profile.rows) {
    out << format_number(row.x) << ',' << format_number(row.y) << ',';
    if (row.z_exact) out << format_number(*row.z_exact);
    out << ',';
    if (row.z_read) {
      out << format_number(*row.z_read);
    } else {
      out << "OFF_SCALE";
    }
    out << ',';
    if (row.rel_err) out << format_number(*row.rel_err);
    out << '\n';
  }
}

}  // namespace sliderule
