#include "sliderule/layout.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <map>
#include <optional>
#include <set>

#include "sliderule/errors.hpp"
#include "sliderule/format.hpp"

namespace sliderule {

namespace {

constexpr int kMaxDepth = 8;
constexpr int kMaxDecades = 60;

double decimal(long long n, int e) {
  return e >= 0 ? static_cast<double>(n) * std::pow(10.0, e) : static_cast<double>(n) / std::pow(10.0, -e);
}

/// Removes accumulated binary noise from v0 + i*step.
double snap(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return std::strtod(buf, nullptr);
}

struct Candidate {
  double value;
  int cls;  // 0: 1*10^k or 0, 1: 5*10^k, 2: 2*10^k, 3: other digits
  int k;
};

int class_of(long long j) {
  switch (j) {
    case 1:
      return 0;
    case 5:
      return 1;
    case 2:
      return 2;
    default:
      return 3;
  }
}

/// Positions with a minimum-distance test.
class Spacing {
 public:
  explicit Spacing(double min_mm) : min_(min_mm) {}

  bool fits(double pos) const {
    auto hi = taken_.lower_bound(pos);
    if (hi != taken_.end() && *hi - pos < min_) return false;
    if (hi != taken_.begin() && pos - *std::prev(hi) < min_) return false;
    return true;
  }

  void take(double pos) { taken_.insert(pos); }

  bool try_take(double pos) {
    if (!fits(pos)) return false;
    take(pos);
    return true;
  }

 private:
  double min_;
  std::set<double> taken_;
};

struct Draft {
  double value;
  double pos;
  int level;
  bool decade;
  int k;
  std::string label;
};

class Generator {
 public:
  Generator(const Scale& scale, const TickPolicy& policy)
      : scale_(scale),
        fn_(scale.function()),
        policy_(policy),
        slack_(1e-9 * std::max(1.0, scale.length_mm())) {}

  std::vector<Draft> run() {
    place_infinity();
    place_anchors();
    subdivide();
    cleanup();
    place_labels();
    std::sort(ticks_.begin(), ticks_.end(), [](const Draft& a, const Draft& b) { return a.pos < b.pos; });
    return std::move(ticks_);
  }

 private:
  bool in_domain(double v) const { return v >= fn_.lower() && v <= fn_.upper(); }

  std::optional<double> pos(double v) const {
    if (!in_domain(v)) return std::nullopt;
    try {
      const double p = scale_.position_of_value(fn_.evaluate_unchecked(v));
      if (!std::isfinite(p) || p < scale_.start_mm() - slack_ || p > scale_.end_mm() + slack_) {
        return std::nullopt;
      }
      return std::clamp(p, scale_.start_mm(), scale_.end_mm());
    } catch (const EvalError&) {
      return std::nullopt;
    }
  }

  void place_infinity() {
    const Interval& d = fn_.domain();
    if (d.lo_infinite()) {
      add_infinity(-std::numeric_limits<double>::infinity(), fn_.value_at_lower());
    }
    if (d.hi_infinite()) {
      add_infinity(std::numeric_limits<double>::infinity(), fn_.value_at_upper());
    }
  }

  void add_infinity(double value, double fn_value) {
    const double p = std::clamp(scale_.position_of_value(fn_value), scale_.start_mm(), scale_.end_mm());
    if (ticks_spacing_.try_take(p)) {
      ticks_.push_back({value, p, 0, true, std::numeric_limits<int>::max(), ""});
    }
  }

  void place_anchors() {
    const double a = fn_.lower();
    const double b = fn_.upper();
    const double vmax = std::max(std::abs(a), std::abs(b));
    if (!(vmax > 0.0) || !std::isfinite(vmax)) return;
    const bool touches_zero = a <= 0.0 && b >= 0.0;
    const int kmax = static_cast<int>(std::floor(std::log10(vmax)));
    int kmin = kmax - 1;
    if (!touches_zero) {
      kmin = static_cast<int>(std::floor(std::log10(std::min(std::abs(a), std::abs(b)))));
    }
    kmin = std::max(kmin, kmax - kMaxDecades);

    if (touches_zero) all_.push_back({0.0, 0, std::numeric_limits<int>::max() - 1});
    for (int k = kmin - 1; k <= kmax + 1; ++k) {
      for (long long j = 1; j <= 9; ++j) {
        const double v = decimal(j, k);
        all_.push_back({v, class_of(j), k});
        all_.push_back({-v, class_of(j), k});
      }
    }
    std::vector<Candidate> inside;
    for (const auto& c : all_) {
      if (in_domain(c.value)) inside.push_back(c);
    }
    std::sort(inside.begin(), inside.end(), [](const Candidate& x, const Candidate& y) {
      if (x.cls != y.cls) return x.cls < y.cls;
      if (x.k != y.k) return x.k > y.k;
      return x.value < y.value;
    });
    for (const auto& c : inside) {
      auto p = pos(c.value);
      if (p && ticks_spacing_.try_take(*p)) {
        ticks_.push_back({c.value, *p, 0, c.cls == 0, c.k, ""});
        anchors_.push_back(c.value);
      }
    }
    std::sort(anchors_.begin(), anchors_.end());
  }

  void subdivide() {
    if (anchors_.empty()) return;
    std::vector<double> bounds;
    if (!fn_.domain().lo_infinite()) {
      if (auto v = outside_below(anchors_.front())) bounds.push_back(*v);
    }
    bounds.insert(bounds.end(), anchors_.begin(), anchors_.end());
    if (!fn_.domain().hi_infinite()) {
      if (auto v = outside_above(anchors_.back())) bounds.push_back(*v);
    }
    for (std::size_t i = 0; i + 1 < bounds.size(); ++i) split(bounds[i], bounds[i + 1], 1);
  }

  std::optional<double> outside_below(double first) const {
    std::optional<double> best;
    for (const auto& c : all_) {
      if (c.value < fn_.lower() && c.value < first && (!best || c.value > *best)) best = c.value;
    }
    return best;
  }

  std::optional<double> outside_above(double last) const {
    std::optional<double> best;
    for (const auto& c : all_) {
      if (c.value > fn_.upper() && c.value > last && (!best || c.value < *best)) best = c.value;
    }
    return best;
  }

  void split(double v0, double v1, int depth) {
    const double w = v1 - v0;
    if (!(w > 0.0) || !std::isfinite(w) || depth > kMaxDepth) return;
    if (!(v1 > fn_.lower() && v0 < fn_.upper())) return;
    const int e = static_cast<int>(std::floor(std::log10(w)));
    const double m = w / decimal(1, e);
    int nice = 0;
    for (int c : {1, 2, 5, 10}) {
      if (std::abs(m - c) <= 1e-6 * c) nice = c;
    }
    if (nice == 0) return;
    if (nice == 10) nice = 1;
    const int pieces = nice == 5 ? 5 : 2;
    const double step = w / pieces;

    std::vector<double> points{v0};
    for (int i = 1; i < pieces; ++i) points.push_back(snap(v0 + i * step));
    points.push_back(v1);

    std::optional<double> prev;
    std::vector<std::optional<double>> positions;
    for (double v : points) {
      auto p = pos(v);
      positions.push_back(p);
      if (!p) continue;
      if (prev && std::abs(*p - *prev) < policy_.min_tick_spacing_mm) return;
      prev = p;
    }
    for (int i = 1; i < pieces; ++i) {
      if (positions[i] && ticks_spacing_.try_take(*positions[i])) {
        ticks_.push_back({points[i], *positions[i], std::min(depth, 2), false, 0, ""});
      }
    }
    for (int i = 0; i < pieces; ++i) split(points[i], points[i + 1], depth + 1);
  }

  /// Re-admits every mark by level so the spacing invariant holds whatever
  /// the earlier passes did.
  void cleanup() {
    std::stable_sort(ticks_.begin(), ticks_.end(),
                     [](const Draft& a, const Draft& b) { return a.level < b.level; });
    Spacing spacing(policy_.min_tick_spacing_mm);
    std::vector<Draft> kept;
    for (auto& t : ticks_) {
      if (spacing.try_take(t.pos)) kept.push_back(std::move(t));
    }
    ticks_ = std::move(kept);
  }

  std::string label_of(double v) const {
    if (std::isinf(v)) return v > 0 ? "∞" : "-∞";
    return format_label(v, policy_.label_rel_tol);
  }

  void place_labels() {
    std::vector<Draft*> decades;
    std::map<std::pair<int, int>, std::vector<Draft*>> groups;  // (sign, k) -> j * 10^k marks
    for (auto& t : ticks_) {
      if (t.level != 0) continue;
      if (t.decade) {
        decades.push_back(&t);
      } else {
        groups[{t.value < 0.0 ? -1 : 1, t.k}].push_back(&t);
      }
    }
    std::stable_sort(decades.begin(), decades.end(), [](const Draft* a, const Draft* b) { return a->k > b->k; });
    Spacing labels(policy_.min_label_spacing_mm);
    for (auto* t : decades) {
      if (labels.try_take(t->pos)) t->label = label_of(t->value);
    }

    std::vector<std::pair<std::pair<int, int>, std::vector<Draft*>>> ordered(groups.begin(), groups.end());
    std::stable_sort(ordered.begin(), ordered.end(),
                     [](const auto& a, const auto& b) { return a.first.second > b.first.second; });
    for (auto& [key, members] : ordered) {
      std::sort(members.begin(), members.end(),
                [](const Draft* a, const Draft* b) { return std::abs(a->value) < std::abs(b->value); });
      thin_decade(members, labels);
    }
  }

  /// Labels every k-th mark of one decade, counted outward from its decade
  /// mark and stopping at the first that would crowd an existing label. k is
  /// the smallest stride reaching the largest count.
  void thin_decade(const std::vector<Draft*>& members, Spacing& labels) {
    std::vector<Draft*> best;
    for (std::size_t k = 1; k <= members.size(); ++k) {
      Spacing trial = labels;
      std::vector<Draft*> picked;
      for (std::size_t off = k; off <= members.size(); off += k) {
        Draft* t = members[off - 1];
        if (!trial.try_take(t->pos)) break;
        picked.push_back(t);
      }
      if (picked.size() > best.size()) best = std::move(picked);
    }
    for (auto* t : best) {
      labels.take(t->pos);
      t->label = label_of(t->value);
    }
  }

  const Scale& scale_;
  const ScaleFunction& fn_;
  TickPolicy policy_;
  double slack_;
  std::vector<Candidate> all_;
  std::vector<double> anchors_;
  std::vector<Draft> ticks_;
  Spacing ticks_spacing_{policy_.min_tick_spacing_mm};
};

}  // namespace

TickLayout generate_ticks(const Scale& scale, const TickPolicy& policy, std::string scale_ref) {
  if (!(policy.min_tick_spacing_mm > 0.0) || !(policy.min_label_spacing_mm > 0.0)) {
    throw std::invalid_argument("tick spacings must be positive");
  }
  std::vector<Draft> drafts = Generator(scale, policy).run();
  if (drafts.size() < 2) {
    throw DegenerateScale((scale_ref.empty() ? scale.function().to_string() : scale_ref) + ": only " +
                          std::to_string(drafts.size()) + " mark(s) fit on " +
                          format_number(scale.length_mm()) + " mm");
  }
  TickLayout layout{std::move(scale_ref), {}};
  layout.ticks.reserve(drafts.size());
  for (auto& d : drafts) layout.ticks.push_back({d.pos, d.level, std::move(d.label), d.value});
  return layout;
}

std::vector<std::string> check_layout(const TickLayout& layout, const Scale& scale, const TickPolicy& policy) {
  std::vector<std::string> out;
  const double slack = 1e-9 * std::max(1.0, scale.length_mm());
  const double eps = 1e-9;
  const Tick* prev = nullptr;
  const Tick* prev_label = nullptr;
  for (const auto& t : layout.ticks) {
    const std::string where = "mark at " + format_fixed(t.pos_mm, 4) + " mm";
    if (t.level < 0 || t.level > 2) out.push_back(where + ": level " + std::to_string(t.level));
    if (t.pos_mm < scale.start_mm() - slack || t.pos_mm > scale.end_mm() + slack) {
      out.push_back(where + ": outside the scale");
    }
    if (prev) {
      if (t.pos_mm < prev->pos_mm) out.push_back(where + ": out of order");
      if (t.pos_mm - prev->pos_mm < policy.min_tick_spacing_mm - eps) out.push_back(where + ": marks too close");
    }
    if (!t.label.empty()) {
      if (prev_label && t.pos_mm - prev_label->pos_mm < policy.min_label_spacing_mm - eps) {
        out.push_back(where + ": labels too close");
      }
      prev_label = &t;
    }
    prev = &t;
  }
  return out;
}

}  // namespace sliderule
