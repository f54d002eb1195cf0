#include "sliderule/render.hpp"

#include <algorithm>
#include <sstream>

#include "sliderule/format.hpp"

namespace sliderule {

namespace {

constexpr double kNameColumnMm = 24.0;

std::string escape(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '"':
        out += "&quot;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

double tick_length_mm(int level) {
  switch (level) {
    case 0:
      return 4.0;
    case 1:
      return 2.6;
    default:
      return 1.6;
  }
}

class SvgWriter {
 public:
  explicit SvgWriter(const SvgStyle& style) : style_(style) {}

  std::string px(double mm) const { return format_fixed(mm * style_.mm_to_px, 3); }

  void line(double x1, double y1, double x2, double y2, const std::string& cls, const std::string& extra,
            const std::string& stroke, double width_mm) {
    out_ << "<line class=\"" << cls << "\"" << extra << " x1=\"" << px(x1) << "\" y1=\"" << px(y1) << "\" x2=\""
         << px(x2) << "\" y2=\"" << px(y2) << "\" stroke=\"" << stroke << "\" stroke-width=\"" << px(width_mm)
         << "\"/>\n";
  }

  void rect(double x, double y, double w, double h, const std::string& cls, const std::string& fill) {
    out_ << "<rect class=\"" << cls << "\" x=\"" << px(x) << "\" y=\"" << px(y) << "\" width=\"" << px(w)
         << "\" height=\"" << px(h) << "\" fill=\"" << fill << "\" stroke=\"" << style_.ink << "\" stroke-width=\""
         << px(0.2) << "\"/>\n";
  }

  void text(double x, double y, const std::string& body, const std::string& cls, const std::string& extra,
            const std::string& anchor, const std::string& fill) {
    out_ << "<text class=\"" << cls << "\"" << extra << " x=\"" << px(x) << "\" y=\"" << px(y)
         << "\" text-anchor=\"" << anchor << "\" fill=\"" << fill << "\">" << escape(body) << "</text>\n";
  }

  std::ostringstream& raw() { return out_; }

 private:
  const SvgStyle& style_;
  std::ostringstream out_;
};

struct Extent {
  double x0;
  double x1;
};

Extent extent_of(const SheetRule& rule) {
  Extent e{0.0, 0.0};
  bool first = true;
  for (const auto& s : rule.scales) {
    if (first) {
      e = {s.start_mm, s.end_mm};
      first = false;
    } else {
      e.x0 = std::min(e.x0, s.start_mm);
      e.x1 = std::max(e.x1, s.end_mm);
    }
  }
  return e;
}

}  // namespace

std::string render_svg(const ScaleSheet& sheet, const SvgStyle& style) {
  const double margin = style.margin_mm;
  const double row = style.row_height_mm;
  const double header = 6.0;
  const double gap = 8.0;

  double width = 100.0;
  double height = 2.0 * margin;
  for (const auto& rule : sheet.rules) {
    const Extent e = extent_of(rule);
    width = std::max(width, e.x1 - e.x0 + 2.0 * margin + kNameColumnMm);
    height += header + row * static_cast<double>(rule.scales.size()) + gap;
  }
  if (sheet.rules.empty()) height = 20.0;

  SvgWriter w(style);
  auto& out = w.raw();
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << w.px(width) << "\" height=\""
      << w.px(height) << "\" viewBox=\"0 0 " << w.px(width) << " " << w.px(height) << "\" data-mm-to-px=\""
      << format_number(style.mm_to_px) << "\" data-margin-mm=\"" << format_number(margin) << "\" font-family=\""
      << escape(style.font_family) << "\" font-size=\"" << w.px(style.font_size_mm) << "\">\n";
  w.rect(0.0, 0.0, width, height, "frame", "#ffffff");

  double y = margin;
  for (const auto& rule : sheet.rules) {
    const Extent e = extent_of(rule);
    auto x_of = [&](double pos_mm) { return margin + pos_mm - e.x0; };
    out << "<g class=\"rule\" data-rule=\"" << escape(rule.name) << "\" data-x0=\"" << format_fixed(e.x0, 4)
        << "\">\n";
    w.text(margin, y + header - 2.0, rule.name + (rule.description.empty() ? "" : ": " + rule.description),
           "title", "", "start", style.ink);
    y += header;

    std::size_t stator_rows = 0;
    for (const auto& s : rule.scales) stator_rows += s.strip == "stator" ? 1 : 0;
    const double stator_h = row * static_cast<double>(stator_rows);
    const double slide_h = row * static_cast<double>(rule.scales.size() - stator_rows);
    w.rect(x_of(e.x0), y, e.x1 - e.x0, stator_h, "stator", style.stator_fill);
    if (slide_h > 0.0) w.rect(x_of(e.x0), y + stator_h, e.x1 - e.x0, slide_h, "slide", style.slide_fill);

    double row_top = y;
    for (const auto& s : rule.scales) {
      const bool slide = s.strip == "slide";
      // stator marks rise from the row bottom, slide marks hang from the row top
      const double base = slide ? row_top : row_top + row;
      const double dir = slide ? 1.0 : -1.0;
      const std::string data = " data-scale=\"" + escape(s.id) + "\"";
      out << "<g class=\"scale\"" << data << " data-strip=\"" << s.strip << "\">\n";
      w.line(x_of(s.start_mm), base, x_of(s.end_mm), base, "baseline", data, style.ink, 0.15);
      for (const auto& t : s.ticks) {
        const double len = tick_length_mm(t.level);
        const std::string extra = data + " data-pos-mm=\"" + format_fixed(t.pos_mm, 4) + "\"";
        w.line(x_of(t.pos_mm), base, x_of(t.pos_mm), base + dir * len, "tick level-" + std::to_string(t.level),
               extra, style.ink, t.level == 0 ? 0.15 : 0.1);
        if (!t.label.empty()) {
          const double ty = slide ? base + len + style.font_size_mm : base - len - 0.6;
          w.text(x_of(t.pos_mm), ty, t.label, "label", extra, "middle", style.ink);
        }
      }
      for (const auto& g : rule.gauge_marks) {
        if (g.scale_id != s.id) continue;
        const std::string extra = data + " data-pos-mm=\"" + format_fixed(g.pos_mm, 4) + "\"";
        w.line(x_of(g.pos_mm), base, x_of(g.pos_mm), base + dir * 5.0, "gauge", extra, style.gauge_ink, 0.15);
        w.text(x_of(g.pos_mm), base + dir * 5.6, g.label, "gauge-label", extra, "middle", style.gauge_ink);
      }
      const std::string name = (s.roles.empty() ? s.id : s.roles.front()) +
                               (s.origin_label ? " (S: " + *s.origin_label + ")" : "");
      w.text(x_of(e.x1) + 2.0, row_top + row / 2.0 + 1.0, name, "scale-name", data, "start", style.ink);
      out << "</g>\n";
      row_top += row;
    }
    out << "</g>\n";
    y = row_top + gap;
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace sliderule
