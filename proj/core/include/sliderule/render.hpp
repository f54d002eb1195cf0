#pragma once

#include <string>

#include "sliderule/sheet.hpp"

namespace sliderule {

struct SvgStyle {
  double mm_to_px = 3.7795275591;  // 96 dpi
  double margin_mm = 10.0;
  double row_height_mm = 12.0;
  double font_size_mm = 2.4;
  std::string font_family = "sans-serif";
  std::string ink = "#000000";
  std::string stator_fill = "#f6f2e6";
  std::string slide_fill = "#e6eef6";
  std::string gauge_ink = "#b00000";
};

/// SVG 1.1 picture of a sheet: one block per rule, stator rows above the slide
/// row, all coordinates in px with 3 decimals. A mark at pos_mm of a rule with
/// data-x0 = x0 is drawn at x = (margin_mm + pos_mm - x0) * mm_to_px.
/// Identical sheets give identical bytes.
std::string render_svg(const ScaleSheet& sheet, const SvgStyle& style = {});

}  // namespace sliderule
