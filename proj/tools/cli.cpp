#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "sliderule/catalog.hpp"
#include "sliderule/compiler.hpp"
#include "sliderule/dsl.hpp"
#include "sliderule/errors.hpp"
#include "sliderule/format.hpp"
#include "sliderule/render.hpp"
#include "sliderule/sheet.hpp"
#include "sliderule/simulator.hpp"

namespace sliderule::cli {
namespace {

// Thrown after the message has been printed.
struct Exit {
  int code;
};

struct UsageError {
  std::string message;
};

struct Options {
  std::vector<std::string> params;
  std::string from;
  std::string output;
  double length = kDefaultLengthMm;
  double resolution = 0.0;
};

std::string read_file(const std::string& path, std::ostream& err) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    err << path << ": IoError: cannot open file\n";
    throw Exit{kInputError};
  }
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_output(const std::string& path, const std::string& text, std::ostream& out, std::ostream& err) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file || !(file << text)) {
    err << path << ": IoError: cannot write file\n";
    throw Exit{kInputError};
  }
}

ParamMap parse_bindings(const std::vector<std::string>& items) {
  ParamMap map;
  for (const auto& item : items) {
    auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError{"--param expects name=value, got '" + item + "'"};
    std::string value = item.substr(eq + 1);
    char* end = nullptr;
    double v = std::strtod(value.c_str(), &end);
    if (value.empty() || *end != '\0') throw UsageError{"--param " + item + ": not a number"};
    map[item.substr(0, eq)] = v;
  }
  return map;
}

bool looks_like_json(const std::string& text) {
  auto pos = text.find_first_not_of(" \t\r\n");
  return pos != std::string::npos && text[pos] == '{';
}

void report_parse_error(const std::string& path, const ParseError& e, std::ostream& err) {
  if (e.line() > 0)
    err << path << ':' << e.line() << ':' << e.column() << ": ParseError: " << e.what() << '\n';
  else
    err << path << ": ParseError: " << e.what() << " (offset " << e.offset() << ")\n";
}

DslDocument load_dsl(const std::string& path, const std::string& text, std::ostream& err) {
  DslDocument doc;
  try {
    doc = parse_dsl(text);
  } catch (const ParseError& e) {
    report_parse_error(path, e, err);
    throw Exit{kInputError};
  }
  for (const auto& d : doc.diagnostics) {
    err << path << ':' << d.line << ':' << d.column << ": " << d.kind << ": " << d.message;
    if (d.witness) err << " (at " << format_number(*d.witness) << ')';
    err << '\n';
  }
  if (!doc.ok()) throw Exit{kValidation};
  return doc;
}

/// Rules from a DSL file or an exported sheet.
std::vector<RuleSpec> load_rules(const std::string& path, std::ostream& err) {
  std::string text = read_file(path, err);
  if (looks_like_json(text)) {
    ScaleSheet sheet;
    try {
      sheet = parse_sheet(text);
    } catch (const ParseError& e) {
      report_parse_error(path, e, err);
      throw Exit{kInputError};
    }
    std::vector<RuleSpec> rules;
    for (const auto& r : sheet.rules) rules.push_back(rule_from_sheet(r));
    return rules;
  }
  return load_dsl(path, text, err).rules;
}

struct Resolved {
  RuleSpec rule;
  std::optional<CatalogEntry> entry;
};

std::string canonical_name(const std::string& name) {
  if (name == "multiplication") return "product_xy";
  return name;
}

Resolved resolve(const std::string& name, const Options& opt, std::ostream& err) {
  if (!opt.from.empty()) {
    if (!opt.params.empty()) throw UsageError{"--param applies to catalog rules only"};
    for (auto& rule : load_rules(opt.from, err))
      if (rule.name == name) return {rule, std::nullopt};
    err << opt.from << ": UnknownEntry: no rule named '" << name << "'\n";
    throw Exit{kValidation};
  }
  CatalogEntry entry = builtin(canonical_name(name), parse_bindings(opt.params));
  RuleSpec rule = entry.rule;
  return {rule, std::move(entry)};
}

void print_solver_roots(const CatalogEntry& entry, double x, double y, double z, std::ostream& out) {
  if (entry.name == "quadratic_solver") {
    out << "roots: " << format_number(-x / 2 + z) << ' ' << format_number(-x / 2 - z) << '\n';
  } else if (entry.name == "cubic_solver") {
    double t = std::cbrt(-y / 2 + z) + std::cbrt(-y / 2 - z);
    out << "root: " << format_number(t) << '\n';
  }
}

int cmd_compile(const std::string& path, bool validate_only, const Options& opt, std::ostream& out,
                std::ostream& err) {
  DslDocument doc = load_dsl(path, read_file(path, err), err);
  bool failed = false;
  for (const auto& rule : doc.rules) {
    for (const auto& d : validate_rule(rule)) {
      err << path << ": " << rule.name << ": " << d.kind << ": " << d.message << '\n';
      failed = true;
    }
    for (const auto& note : rule.notes) err << path << ": " << rule.name << ": note: " << note << '\n';
  }
  if (failed) return kValidation;
  if (validate_only) {
    out << "ok: " << doc.rules.size() << " rule(s)\n";
    return kOk;
  }
  write_output(opt.output, serialize_sheet(export_sheet(doc.rules, opt.length)), out, err);
  return kOk;
}

int cmd_compute(const std::string& name, double x, double y, const Options& opt, std::ostream& out,
                std::ostream& err) {
  Resolved r = resolve(name, opt, err);
  if (r.entry) r.entry->check_inputs(x, y);
  ReadingModel model{opt.resolution};
  RuleState state = slide_set(RuleState::make(r.rule, opt.length), x);
  double z = read_result(state, y, model);
  if (opt.resolution > 0) {
    double exact = r.rule.evaluate(x, y);
    double rel = exact != 0 ? std::abs(z - exact) / std::abs(exact) : std::abs(z - exact);
    out << format_number(z) << " (exact " << format_number(exact) << ", rel_err " << format_number(rel) << ")\n";
  } else {
    out << format_number(z) << '\n';
  }
  if (r.entry) print_solver_roots(*r.entry, x, y, z, out);
  return kOk;
}

int cmd_chain(const std::string& name, const std::vector<double>& xs, const std::optional<double>& mean,
              bool want_mean, const Options& opt, std::ostream& out, std::ostream& err) {
  ReadingModel model{opt.resolution};
  if (want_mean) {
    double alpha = 0;
    if (mean) {
      alpha = *mean;
    } else {
      Resolved r = resolve(name, opt, err);
      if (!r.rule.alpha) throw UsageError{"--mean needs ALPHA for rule '" + name + "'"};
      alpha = *r.rule.alpha;
    }
    out << format_number(power_mean(xs, alpha, model, opt.length)) << '\n';
    return kOk;
  }
  Resolved r = resolve(name, opt, err);
  out << format_number(chain(r.rule, xs, model, opt.length)) << '\n';
  return kOk;
}

int cmd_export(const std::vector<std::string>& names, const Options& opt, std::ostream& out, std::ostream& err) {
  std::vector<RuleSpec> rules;
  if (!opt.from.empty()) {
    if (!opt.params.empty()) throw UsageError{"--param applies to catalog rules only"};
    for (auto& rule : load_rules(opt.from, err))
      if (names.empty() || std::find(names.begin(), names.end(), rule.name) != names.end())
        rules.push_back(std::move(rule));
  } else {
    ParamMap bindings = parse_bindings(opt.params);
    for (const auto& n : names.empty() ? builtin_names() : names)
      rules.push_back(builtin(canonical_name(n), names.empty() ? ParamMap{} : bindings).rule);
  }
  write_output(opt.output, serialize_sheet(export_sheet(rules, opt.length)), out, err);
  return kOk;
}

int cmd_render(const std::string& input, const std::vector<std::string>& names, const SvgStyle& style,
               const Options& opt, std::ostream& out, std::ostream& err) {
  ScaleSheet sheet;
  if (!input.empty()) {
    std::string text = read_file(input, err);
    if (looks_like_json(text)) {
      try {
        sheet = parse_sheet(text);
      } catch (const ParseError& e) {
        report_parse_error(input, e, err);
        throw Exit{kInputError};
      }
    } else {
      sheet = export_sheet(load_dsl(input, text, err).rules, opt.length);
    }
  } else {
    std::vector<RuleSpec> rules;
    for (const auto& n : names.empty() ? std::vector<std::string>{"replus", "quadplus"} : names)
      rules.push_back(builtin(canonical_name(n)).rule);
    sheet = export_sheet(rules, opt.length);
  }
  write_output(opt.output, render_svg(sheet, style), out, err);
  return kOk;
}

std::vector<double> grid(const ScaleFunction& fn, std::size_t n, const std::vector<double>& range) {
  std::vector<double> v;
  for (std::size_t i = 0; i < n; ++i) {
    double t = n == 1 ? 0.5 : static_cast<double>(i) / static_cast<double>(n - 1);
    v.push_back(range.size() == 2 ? range[0] + t * (range[1] - range[0]) : fn.at_fraction(t));
  }
  return v;
}

int cmd_profile(const std::string& name, std::size_t n, const std::vector<double>& xr, const std::vector<double>& yr,
                const Options& opt, std::ostream& out, std::ostream& err) {
  if (n == 0) throw UsageError{"--grid must be positive"};
  Resolved r = resolve(name, opt, err);
  auto xs = grid(r.rule.f, n, xr);
  auto ys = grid(r.rule.g, n, yr);
  ErrorProfile p = error_profile(r.rule, xs, ys, ReadingModel{opt.resolution}, opt.length);
  std::ostringstream csv;
  write_profile_csv(csv, p);
  write_output(opt.output, csv.str(), out, err);
  err << "max_rel_err=" << format_number(p.max_rel_err) << " mean_rel_err=" << format_number(p.mean_rel_err)
      << " readable=" << p.readable << " off_scale=" << p.off_scale << '\n';
  return kOk;
}

int cmd_list(std::ostream& out) {
  for (const auto& info : list_builtins()) {
    out << info.name << "  " << info.description;
    if (!info.parameters.empty()) {
      out << "  [";
      for (std::size_t i = 0; i < info.parameters.size(); ++i) {
        if (i) out << ", ";
        out << info.parameters[i].name << '=' << format_number(info.parameters[i].default_value);
      }
      out << ']';
    }
    out << '\n';
  }
  return kOk;
}

void add_common(CLI::App* cmd, Options& opt, bool params, bool from) {
  cmd->add_option("--length", opt.length, "Scale length in mm")->check(CLI::PositiveNumber);
  if (params) cmd->add_option("--param", opt.params, "Catalog parameter binding name=value");
  if (from) cmd->add_option("--from", opt.from, "Read rules from a DSL file or sheet");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Slide-rule scale synthesis", "sliderule"};
  app.require_subcommand(1);
  Options opt;

  auto* compile = app.add_subcommand("compile", "Compile a rule file into a scale sheet");
  std::string compile_path;
  bool validate_only = false;
  compile->add_option("file", compile_path, "Rule file")->required();
  compile->add_option("-o,--output", opt.output, "Output path (default stdout)");
  compile->add_flag("--validate-only", validate_only, "Only check the rules");
  add_common(compile, opt, false, false);

  auto* compute = app.add_subcommand("compute", "Read z for x and y on a simulated rule");
  std::string rule_name;
  double x = 0, y = 0;
  compute->add_option("rule", rule_name, "Catalog entry or rule name")->required();
  compute->add_option("x", x)->required();
  compute->add_option("y", y)->required();
  compute->add_option("--resolution", opt.resolution, "Reading resolution in mm")->check(CLI::NonNegativeNumber);
  add_common(compute, opt, true, true);

  auto* chain_cmd = app.add_subcommand("chain", "Chain values along a rule");
  std::vector<double> values;
  std::optional<double> mean_alpha;
  chain_cmd->add_option("rule", rule_name)->required();
  chain_cmd->add_option("values", values)->required();
  auto* mean_opt = chain_cmd->add_option("--mean", mean_alpha, "Power mean of the values")->expected(0, 1);
  chain_cmd->add_option("--resolution", opt.resolution)->check(CLI::NonNegativeNumber);
  add_common(chain_cmd, opt, true, true);

  auto* render = app.add_subcommand("render", "Draw a sheet as SVG");
  std::string render_input;
  std::vector<std::string> render_rules;
  SvgStyle style;
  render->add_option("input", render_input, "Sheet JSON or rule file");
  render->add_option("--rule", render_rules, "Catalog entries to draw");
  render->add_option("-o,--output", opt.output);
  render->add_option("--mm-to-px", style.mm_to_px)->check(CLI::PositiveNumber);
  render->add_option("--font", style.font_family);
  add_common(render, opt, false, false);

  auto* profile = app.add_subcommand("profile", "Reading error over a grid (CSV)");
  std::size_t grid_n = 50;
  std::vector<double> x_range, y_range;
  double profile_resolution = 0.1;
  profile->add_option("rule", rule_name)->required();
  profile->add_option("--grid", grid_n, "Points per variable");
  profile->add_option("--x-range", x_range)->expected(2);
  profile->add_option("--y-range", y_range)->expected(2);
  profile->add_option("--resolution", profile_resolution)->check(CLI::NonNegativeNumber);
  profile->add_option("-o,--output", opt.output);
  add_common(profile, opt, true, true);

  auto* list = app.add_subcommand("list", "List catalog entries");

  auto* export_cmd = app.add_subcommand("export", "Export catalog rules as a scale sheet");
  std::vector<std::string> export_names;
  export_cmd->add_option("rules", export_names, "Catalog entries (default: all)");
  export_cmd->add_option("-o,--output", opt.output);
  add_common(export_cmd, opt, true, true);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }
  if (app.got_subcommand(profile)) opt.resolution = profile_resolution;

  try {
    if (app.got_subcommand(compile)) return cmd_compile(compile_path, validate_only, opt, out, err);
    if (app.got_subcommand(compute)) return cmd_compute(rule_name, x, y, opt, out, err);
    if (app.got_subcommand(chain_cmd))
      return cmd_chain(rule_name, values, mean_alpha, mean_opt->count() > 0, opt, out, err);
    if (app.got_subcommand(render)) return cmd_render(render_input, render_rules, style, opt, out, err);
    if (app.got_subcommand(profile)) return cmd_profile(rule_name, grid_n, x_range, y_range, opt, out, err);
    if (app.got_subcommand(list)) return cmd_list(out);
    if (app.got_subcommand(export_cmd)) return cmd_export(export_names, opt, out, err);
  } catch (const Exit& e) {
    return e.code;
  } catch (const UsageError& e) {
    err << "error: " << e.message << '\n';
    return kUsage;
  } catch (const OffScale& e) {
    err << "OffScale: " << e.what();
    if (e.step()) err << " at chain step " << *e.step();
    err << '\n';
    return kOffScale;
  } catch (const ParseError& e) {
    err << "ParseError: " << e.what() << '\n';
    return kInputError;
  } catch (const Error& e) {
    err << e.kind() << ": " << e.what() << '\n';
    return kValidation;
  }
  return kUsage;
}

}  // namespace sliderule::cli
