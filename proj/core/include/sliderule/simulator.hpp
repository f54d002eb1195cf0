#pragma once

#include <cstddef>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "sliderule/rule.hpp"

namespace sliderule {

inline constexpr double kDefaultLengthMm = 250.0;

/// Physical reading precision. Positions are rounded to the nearest multiple
/// of resolution_mm; 0 reads exactly.
struct ReadingModel {
  double resolution_mm = 0.0;

  static ReadingModel ideal() { return {}; }
  double quantize(double pos_mm) const;
};

/// A rule mounted on a stator and a slide.
///
/// Every strip measures from its origin S, the point where its scale function
/// vanishes, with a common unit k = length_mm / (f_max - f_min). The stator
/// carries F and f, the slide carries g. For op = minus the slide is marked
/// right-to-left, so moving the hairline along it subtracts.
class RuleState {
 public:
  static RuleState make(const RuleSpec& rule, double length_mm = kDefaultLengthMm);

  const RuleSpec& rule() const { return *rule_; }
  const Scale& stator() const { return strips_->F; }
  const Scale& stator_f() const { return strips_->f; }
  const Scale& slide() const { return strips_->g; }
  double length_mm() const { return strips_->length_mm; }
  double mm_per_unit() const { return strips_->F.mm_per_unit(); }

  /// Displacement of the slide origin S2 from the stator origin S1.
  double offset_mm() const { return offset_mm_; }
  RuleState with_offset(double offset_mm) const;

 private:
  struct Strips {
    Scale F;
    Scale f;
    Scale g;
    double length_mm;
  };

  RuleState(std::shared_ptr<const RuleSpec> rule, std::shared_ptr<const Strips> strips, double offset);

  std::shared_ptr<const RuleSpec> rule_;
  std::shared_ptr<const Strips> strips_;
  double offset_mm_ = 0.0;
};

/// Moves S2 to the stator mark of x. Throws DomainError.
RuleState slide_set(const RuleState& state, double x);

/// Places the hairline at slide mark y and reads the stator F scale under it.
/// Both the slide offset and the hairline are quantized. Throws OffScale when
/// the hairline leaves the F scale, DomainError for y outside dom(g).
double read_result(const RuleState& state, double y, const ReadingModel& model = {});

/// Left fold z1 = xs[0], z(k+1) = F^-1(F(zk) + g(xs[k])). Needs op = plus and
/// F = f; throws ChainUnsupported otherwise and OffScale tagged with the step.
double chain(const RuleSpec& rule, std::span<const double> xs, const ReadingModel& model = {},
             double length_mm = kDefaultLengthMm);

/// H_alpha(xs) = ((sum xs^alpha) / n)^(1/alpha), chained on an x^alpha rule
/// whose domain covers every partial result, then divided by n^(1/alpha).
double power_mean(std::span<const double> xs, double alpha, const ReadingModel& model = {},
                  double length_mm = kDefaultLengthMm);

struct ProfileRow {
  double x;
  double y;
  std::optional<double> z_exact;  // empty when z lies outside dom(F)
  std::optional<double> z_read;   // empty when off-scale
  std::optional<double> rel_err;
};

struct ErrorProfile {
  std::vector<ProfileRow> rows;
  double max_rel_err = 0.0;
  double mean_rel_err = 0.0;
  std::size_t readable = 0;
  std::size_t off_scale = 0;
};

/// Quantized against exact reading for every (x, y) of the grid. Relative
/// error is |z_read - z_exact| / |z_exact| (absolute when z_exact = 0).
ErrorProfile error_profile(const RuleSpec& rule, std::span<const double> xs, std::span<const double> ys,
                           const ReadingModel& model, double length_mm = kDefaultLengthMm);

/// CSV with header x,y,z_exact,z_read,rel_err; OFF_SCALE in z_read where the
/// reading left the rule.
void write_profile_csv(std::ostream& out, const ErrorProfile& profile);

}  // namespace sliderule
