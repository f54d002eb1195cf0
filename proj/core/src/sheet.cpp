#include "sliderule/sheet.hpp"

#include <cmath>
#include <limits>

#include <json.hpp>

#include "sliderule/compiler.hpp"
#include "sliderule/errors.hpp"
#include "sliderule/format.hpp"
#include "sliderule/simulator.hpp"

namespace sliderule {

using json = nlohmann::ordered_json;

namespace {

// ---------------------------------------------------------------------------
// export

std::optional<std::string> origin_label_of(const ScaleFunction& fn) {
  const double span = fn.value_max() - fn.value_min();
  auto vanishes = [&](double v) { return std::abs(v) <= 1e-9 * std::max(1.0, span); };
  if (fn.domain().lo_infinite() && vanishes(fn.value_at_lower())) return "∞";
  if (fn.domain().hi_infinite() && vanishes(fn.value_at_upper())) return "∞";
  return std::nullopt;
}

SheetScale lay_out(const Scale& scale, std::string id, std::vector<std::string> roles, std::string strip,
                   const TickPolicy& policy) {
  const ScaleFunction& fn = scale.function();
  TickLayout layout;
  try {
    layout = generate_ticks(scale, policy, id);
  } catch (const DegenerateScale& e) {
    throw DegenerateScale(id + ": " + e.what());
  }
  for (auto& t : layout.ticks) t.pos_mm = round_to(t.pos_mm, 4);
  return SheetScale{
      .id = std::move(id),
      .roles = std::move(roles),
      .strip = std::move(strip),
      .function = {fn.variable(), fn.expr().to_string(), fn.domain(), fn.params(), fn.direction()},
      .mm_per_unit = scale.mm_per_unit(),
      .origin_value = scale.origin_value(),
      .reversed = scale.reversed(),
      .origin_label = origin_label_of(fn),
      .start_mm = scale.start_mm(),
      .end_mm = scale.end_mm(),
      .ticks = std::move(layout.ticks),
  };
}

}  // namespace

ScaleSheet export_sheet(const std::vector<RuleSpec>& rules, double length_mm, const TickPolicy& policy) {
  ScaleSheet sheet;
  for (const auto& rule : rules) {
    const RuleState state = RuleState::make(rule, length_mm);
    SheetRule out{
        .name = rule.name,
        .description = rule.description,
        .kind = std::string(to_string(rule.kind)),
        .op = std::string(1, op_symbol(rule.op)),
        .shares_F_f = rule.shares_F_f,
        .alpha = rule.alpha,
        .length_mm = length_mm,
        .result_domain = rule.result_domain,
        .scales = {},
        .gauge_marks = {},
    };
    if (rule.shares_F_f) {
      out.scales.push_back(lay_out(state.stator(), rule.name + ".F", {"F", "f"}, "stator", policy));
    } else {
      out.scales.push_back(lay_out(state.stator(), rule.name + ".F", {"F"}, "stator", policy));
      out.scales.push_back(lay_out(state.stator_f(), rule.name + ".f", {"f"}, "stator", policy));
    }
    out.scales.push_back(lay_out(state.slide(), rule.name + ".g", {"g"}, "slide", policy));

    if (rule.kind == RuleKind::Power && rule.alpha == 2.0) {
      const double root2 = std::sqrt(2.0);
      if (rule.F.contains(root2)) {
        out.gauge_marks.push_back({rule.name + ".F", "√2", root2,
                                   round_to(state.stator().position_of_value(rule.F(root2)), 4)});
      }
    }
    sheet.rules.push_back(std::move(out));
  }
  return sheet;
}

// ---------------------------------------------------------------------------
// JSON

namespace {

json number_or_inf(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double read_number(const json& j) {
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    throw ParseError("expected a number, got \"" + s + "\"", 0);
  }
  return j.get<double>();
}

json interval_json(const Interval& d) {
  return {{"lo", number_or_inf(d.lo)}, {"hi", number_or_inf(d.hi)}, {"lo_open", d.lo_open}, {"hi_open", d.hi_open}};
}

Interval read_interval(const json& j) {
  return {read_number(j.at("lo")), read_number(j.at("hi")), j.at("lo_open").get<bool>(),
          j.at("hi_open").get<bool>()};
}

json scale_json(const SheetScale& s) {
  json params = json::object();
  for (const auto& [name, value] : s.function.params) params[name] = value;
  json ticks = json::array();
  for (const auto& t : s.ticks) {
    ticks.push_back({{"pos_mm", t.pos_mm}, {"level", t.level}, {"label", t.label}, {"value", number_or_inf(t.value)}});
  }
  return {
      {"id", s.id},
      {"roles", s.roles},
      {"strip", s.strip},
      {"function",
       {{"variable", s.function.variable},
        {"expr", s.function.expr},
        {"domain", interval_json(s.function.domain)},
        {"params", params},
        {"direction", std::string(to_string(s.function.direction))}}},
      {"mm_per_unit", s.mm_per_unit},
      {"origin_value", s.origin_value},
      {"reversed", s.reversed},
      {"origin_label", s.origin_label ? json(*s.origin_label) : json(nullptr)},
      {"start_mm", s.start_mm},
      {"end_mm", s.end_mm},
      {"ticks", ticks},
  };
}

SheetScale read_scale(const json& j) {
  SheetScale s;
  s.id = j.at("id").get<std::string>();
  s.roles = j.at("roles").get<std::vector<std::string>>();
  s.strip = j.at("strip").get<std::string>();
  const json& fn = j.at("function");
  s.function.variable = fn.at("variable").get<std::string>();
  s.function.expr = fn.at("expr").get<std::string>();
  s.function.domain = read_interval(fn.at("domain"));
  for (const auto& [name, value] : fn.at("params").items()) s.function.params.emplace(name, value.get<double>());
  const auto direction = fn.at("direction").get<std::string>();
  if (direction == "increasing") {
    s.function.direction = Direction::Increasing;
  } else if (direction == "decreasing") {
    s.function.direction = Direction::Decreasing;
  } else {
    throw ParseError("unknown direction \"" + direction + "\"", 0);
  }
  s.mm_per_unit = j.at("mm_per_unit").get<double>();
  s.origin_value = j.at("origin_value").get<double>();
  s.reversed = j.at("reversed").get<bool>();
  if (!j.at("origin_label").is_null()) s.origin_label = j.at("origin_label").get<std::string>();
  s.start_mm = j.at("start_mm").get<double>();
  s.end_mm = j.at("end_mm").get<double>();
  for (const auto& t : j.at("ticks")) {
    s.ticks.push_back({t.at("pos_mm").get<double>(), t.at("level").get<int>(), t.at("label").get<std::string>(),
                       read_number(t.at("value"))});
  }
  return s;
}

}  // namespace

std::string serialize_sheet(const ScaleSheet& sheet) {
  json rules = json::array();
  for (const auto& r : sheet.rules) {
    json scales = json::array();
    for (const auto& s : r.scales) scales.push_back(scale_json(s));
    json gauges = json::array();
    for (const auto& g : r.gauge_marks) {
      gauges.push_back({{"scale_id", g.scale_id}, {"label", g.label}, {"value", g.value}, {"pos_mm", g.pos_mm}});
    }
    rules.push_back({
        {"name", r.name},
        {"description", r.description},
        {"kind", r.kind},
        {"op", r.op},
        {"shares_F_f", r.shares_F_f},
        {"alpha", r.alpha ? json(*r.alpha) : json(nullptr)},
        {"length_mm", r.length_mm},
        {"result_domain", interval_json(r.result_domain)},
        {"scales", scales},
        {"gauge_marks", gauges},
    });
  }
  json doc = {{"version", sheet.version}, {"rules", rules}};
  return doc.dump(2) + "\n";
}

ScaleSheet parse_sheet(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed sheet: ") + e.what(), e.byte > 0 ? e.byte - 1 : 0);
  }
  try {
    ScaleSheet sheet;
    sheet.version = doc.at("version").get<int>();
    if (sheet.version != kSheetVersion) {
      throw Error("UnsupportedVersion", "sheet version " + std::to_string(sheet.version) +
                                            " is not supported (expected " + std::to_string(kSheetVersion) + ")");
    }
    for (const auto& r : doc.at("rules")) {
      SheetRule rule;
      rule.name = r.at("name").get<std::string>();
      rule.description = r.at("description").get<std::string>();
      rule.kind = r.at("kind").get<std::string>();
      rule.op = r.at("op").get<std::string>();
      rule.shares_F_f = r.at("shares_F_f").get<bool>();
      if (!r.at("alpha").is_null()) rule.alpha = r.at("alpha").get<double>();
      rule.length_mm = r.at("length_mm").get<double>();
      rule.result_domain = read_interval(r.at("result_domain"));
      for (const auto& s : r.at("scales")) rule.scales.push_back(read_scale(s));
      for (const auto& g : r.at("gauge_marks")) {
        rule.gauge_marks.push_back({g.at("scale_id").get<std::string>(), g.at("label").get<std::string>(),
                                    g.at("value").get<double>(), g.at("pos_mm").get<double>()});
      }
      sheet.rules.push_back(std::move(rule));
    }
    return sheet;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed sheet: ") + e.what(), 0);
  }
}

RuleSpec rule_from_sheet(const SheetRule& rule) {
  auto find = [&](const std::string& role) -> const SheetScale& {
    for (const auto& s : rule.scales) {
      for (const auto& r : s.roles) {
        if (r == role) return s;
      }
    }
    throw ParseError("rule " + rule.name + " has no scale with role " + role, 0);
  };
  auto build = [](const SheetScale& s) {
    return ScaleFunction::parse(s.function.expr, s.function.variable, s.function.domain, s.function.params);
  };
  const auto op = op_from_symbol(rule.op);
  if (!op) throw ParseError("rule " + rule.name + ": unknown operator \"" + rule.op + "\"", 0);
  RuleSpec spec = compile_direct(build(find("F")), build(find("f")), build(find("g")), *op,
                                 {rule.name, rule.description});
  if (auto kind = rule_kind_from_string(rule.kind)) spec.kind = *kind;
  spec.alpha = rule.alpha;
  return spec;
}

}  // namespace sliderule
