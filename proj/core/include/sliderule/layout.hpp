#pragma once

#include <string>
#include <vector>

#include "sliderule/scale.hpp"

namespace sliderule {

struct TickPolicy {
  double min_tick_spacing_mm = 0.6;
  double min_label_spacing_mm = 3.0;
  double label_rel_tol = 1e-9;  // labels are the shortest decimals within this tolerance
};

struct Tick {
  double pos_mm;
  int level;          // 0 major, 1 minor, 2 fine
  std::string label;  // empty when unlabeled
  double value;       // +-inf for the mark of an infinite domain end

  friend bool operator==(const Tick&, const Tick&) = default;
};

struct TickLayout {
  std::string scale_ref;
  std::vector<Tick> ticks;  // sorted by pos_mm

  friend bool operator==(const TickLayout&, const TickLayout&) = default;
};

/// Places round-valued marks on a scale.
///
/// Major marks are j * 10^k values accepted coarse-first (1, then 5, then 2,
/// then the rest) while they keep min_tick_spacing_mm; each gap between major
/// marks whose width is 1, 2 or 5 times a power of ten is split recursively
/// (halves, fifths) as long as the pieces stay wide enough. Major marks carry
/// labels, thinned to every k-th mark between decade marks. An infinite domain
/// end gets a mark labelled "∞". Throws DegenerateScale below two marks.
TickLayout generate_ticks(const Scale& scale, const TickPolicy& policy = {}, std::string scale_ref = {});

/// Spacing and ordering violations of a layout, empty when it is valid.
std::vector<std::string> check_layout(const TickLayout& layout, const Scale& scale, const TickPolicy& policy);

}  // namespace sliderule
