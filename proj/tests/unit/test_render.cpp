#include <gtest/gtest.h>

#include <regex>

#include "sliderule/catalog.hpp"
#include "sliderule/render.hpp"
#include "sliderule/sheet.hpp"

using namespace sliderule;

namespace {

std::size_t count(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto p = text.find(needle); p != std::string::npos; p = text.find(needle, p + 1)) ++n;
  return n;
}

}  // namespace

TEST(Render, WellFormedSvg) {
  ScaleSheet sheet = export_sheet({builtin("replus").rule, builtin("quadplus").rule});
  const std::string svg = render_svg(sheet);
  EXPECT_EQ(svg.rfind("<?xml", 0), 0u);
  EXPECT_NE(svg.find("<svg xmlns=\"http://www.w3.org/2000/svg\""), std::string::npos);
  EXPECT_EQ(svg.substr(svg.size() - 7), "</svg>\n");
  EXPECT_EQ(count(svg, "<g class=\"rule\""), 2u);
  EXPECT_EQ(count(svg, "<g "), count(svg, "</g>"));

  std::size_t ticks = 0, labels = 0;
  for (const auto& r : sheet.rules)
    for (const auto& s : r.scales)
      for (const auto& t : s.ticks) {
        ++ticks;
        labels += t.label.empty() ? 0 : 1;
      }
  EXPECT_EQ(count(svg, "<line class=\"tick"), ticks);
  EXPECT_EQ(count(svg, "<text class=\"label\""), labels);
  EXPECT_NE(svg.find(">∞</text>"), std::string::npos);
  EXPECT_NE(svg.find("class=\"gauge"), std::string::npos);
}

TEST(Render, StyleAndDeterminism) {
  ScaleSheet sheet = export_sheet({builtin("quadplus").rule});
  SvgStyle style;
  style.mm_to_px = 2;
  style.font_family = "serif";
  const std::string a = render_svg(sheet, style);
  EXPECT_EQ(a, render_svg(sheet, style));
  EXPECT_NE(a.find("data-mm-to-px=\"2\""), std::string::npos);
  EXPECT_NE(a.find("font-family=\"serif\""), std::string::npos);
  EXPECT_NE(a, render_svg(sheet));
}

TEST(Render, CoordinatesHaveThreeDecimals) {
  const std::string svg = render_svg(export_sheet({builtin("replus").rule}));
  std::regex attr(R"re( x1="(-?\d+\.\d+)")re");
  std::size_t n = 0;
  for (std::sregex_iterator it(svg.begin(), svg.end(), attr), end; it != end; ++it, ++n) {
    const std::string v = (*it)[1];
    EXPECT_EQ(v.size() - v.find('.') - 1, 3u) << v;
  }
  EXPECT_GT(n, 10u);
}

TEST(Render, EmptySheet) {
  const std::string svg = render_svg(ScaleSheet{});
  EXPECT_EQ(count(svg, "<g class=\"rule\""), 0u);
  EXPECT_NE(svg.find("class=\"frame\""), std::string::npos);
}
