#include "sliderule/dsl.hpp"

#include <cctype>
#include <cmath>
#include <limits>
#include <set>

#include "sliderule/errors.hpp"

namespace sliderule {

namespace {

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

// Cursor over one statement. Offsets are byte offsets into the line.
class Cursor {
 public:
  explicit Cursor(std::string_view line) : line_(line) {}

  std::string_view line() const { return line_; }
  std::size_t pos() const { return pos_; }
  void seek(std::size_t pos) { pos_ = pos; }

  void skip_ws() {
    while (pos_ < line_.size() && std::isspace(static_cast<unsigned char>(line_[pos_]))) ++pos_;
  }

  bool at_end() {
    skip_ws();
    return pos_ >= line_.size();
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < line_.size() && line_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'", {std::string("'") + c + "'"});
  }

  std::optional<std::string_view> peek_word() {
    skip_ws();
    if (pos_ >= line_.size() || !is_ident_start(line_[pos_])) return std::nullopt;
    std::size_t end = pos_;
    while (end < line_.size() && is_ident_char(line_[end])) ++end;
    return line_.substr(pos_, end - pos_);
  }

  bool accept_word(std::string_view word) {
    auto w = peek_word();
    if (!w || *w != word) return false;
    pos_ += w->size();
    return true;
  }

  std::string identifier(const char* what) {
    auto w = peek_word();
    if (!w) fail(std::string("expected ") + what, {what});
    pos_ += w->size();
    return std::string(*w);
  }

  /// Non-blank run up to whitespace or end.
  std::string_view token() {
    skip_ws();
    std::size_t end = pos_;
    while (end < line_.size() && !std::isspace(static_cast<unsigned char>(line_[end]))) ++end;
    std::string_view out = line_.substr(pos_, end - pos_);
    pos_ = end;
    return out;
  }

  [[noreturn]] void fail(const std::string& message, std::vector<std::string> expected = {}) const {
    throw ParseError(message, pos_, std::move(expected));
  }

 private:
  std::string_view line_;
  std::size_t pos_ = 0;
};

ParseContext constant_context(const ParamMap& params) {
  ParseContext ctx;
  for (const auto& [name, value] : params) ctx.parameters.insert(name);
  return ctx;
}

ParamMap used_params(const Expr& expr, const ParamMap& params) {
  ParamMap out;
  for (const auto& name : expr.symbols(SymbolKind::Parameter)) out.emplace(name, params.find(name)->second);
  return out;
}

/// Constant expression starting at the cursor, evaluated against params.
double constant_at(Cursor& cur, const ParamMap& params, std::size_t limit) {
  cur.skip_ws();
  const ParseContext ctx = constant_context(params);
  const std::size_t begin = cur.pos();
  PrefixParse parsed = parse_expression_prefix(cur.line().substr(0, limit), begin, &ctx);
  cur.seek(parsed.end);
  try {
    return parsed.expr.evaluate(0.0, params);
  } catch (const EvalError& e) {
    throw ParseError(std::string("cannot evaluate constant: ") + e.what(), begin);
  }
}

double bound_at(Cursor& cur, const ParamMap& params) {
  cur.skip_ws();
  const std::size_t save = cur.pos();
  double sign = 1.0;
  if (cur.accept('-')) {
    sign = -1.0;
  } else {
    cur.accept('+');
  }
  if (cur.accept_word("inf")) return sign * std::numeric_limits<double>::infinity();
  cur.seek(save);
  return constant_at(cur, params, cur.line().size());
}

Interval interval_at(Cursor& cur, const ParamMap& params) {
  Interval out;
  if (cur.accept('[')) {
    out.lo_open = false;
  } else if (cur.accept('(')) {
    out.lo_open = true;
  } else {
    cur.fail("expected interval", {"'['", "'('"});
  }
  out.lo = bound_at(cur, params);
  cur.expect(',');
  out.hi = bound_at(cur, params);
  if (cur.accept(']')) {
    out.hi_open = false;
  } else if (cur.accept(')')) {
    out.hi_open = true;
  } else {
    cur.fail("expected end of interval", {"']'", "')'"});
  }
  // an infinite end can only be approached
  if (std::isinf(out.lo)) out.lo_open = true;
  if (std::isinf(out.hi)) out.hi_open = true;
  return out;
}

struct Item {
  std::string key;
  std::string_view value;
  std::size_t key_pos;
  std::size_t value_pos;
};

class Reader {
 public:
  DslDocument run(std::string_view text) {
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
      std::size_t end = text.find('\n', start);
      if (end == std::string_view::npos) end = text.size();
      ++line_no;
      std::string_view line = text.substr(start, end - start);
      if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      line_ = line_no;
      try {
        statement(line);
      } catch (const ParseError& e) {
        if (e.line() != 0) throw;
        throw e.at_location(line_no, e.offset() + 1);
      }
      if (end == text.size()) break;
      start = end + 1;
    }
    return std::move(doc_);
  }

 private:
  void statement(std::string_view line) {
    Cursor cur(line);
    if (cur.at_end()) return;
    const std::size_t head = cur.pos();
    auto word = cur.peek_word();
    if (word == "param") {
      cur.accept_word("param");
      param(cur);
    } else if (word == "scale") {
      cur.accept_word("scale");
      scale(cur);
    } else if (word == "rule") {
      cur.accept_word("rule");
      rule(cur);
    } else {
      throw ParseError("expected a statement", head, {"param", "scale", "rule"});
    }
  }

  void require_fresh(const Cursor& cur, const std::string& name, std::size_t at) {
    if (name == "pi" || intrinsic_from_name(name) || name == "inf") {
      throw ParseError("'" + name + "' is reserved", at);
    }
    if (doc_.params.count(name) || doc_.scales.count(name) || failed_scales_.count(name) ||
        rule_names_.count(name)) {
      throw ParseError("'" + name + "' is already defined", at);
    }
    (void)cur;
  }

  void param(Cursor& cur) {
    cur.skip_ws();
    const std::size_t at = cur.pos();
    std::string name = cur.identifier("parameter name");
    require_fresh(cur, name, at);
    cur.expect('=');
    const double value = constant_at(cur, doc_.params, cur.line().size());
    if (!cur.at_end()) cur.fail("unexpected text after parameter value", {"end of line"});
    doc_.params.emplace(std::move(name), value);
  }

  void scale(Cursor& cur) {
    cur.skip_ws();
    const std::size_t at = cur.pos();
    std::string name = cur.identifier("scale name");
    require_fresh(cur, name, at);
    cur.expect('(');
    cur.skip_ws();
    std::string var = cur.identifier("variable name");
    if (doc_.params.count(var)) throw ParseError("variable '" + var + "' shadows a parameter", cur.pos());
    cur.expect(')');
    cur.expect('=');
    cur.skip_ws();

    ParseContext ctx = constant_context(doc_.params);
    ctx.variable = var;
    PrefixParse parsed = parse_expression_prefix(cur.line(), cur.pos(), &ctx);
    cur.seek(parsed.end);
    if (!cur.accept_word("on")) cur.fail("expected 'on' before the domain", {"on", "operator"});
    Interval domain = interval_at(cur, doc_.params);
    if (!cur.at_end()) cur.fail("unexpected text after domain", {"end of line"});

    try {
      ParamMap params = used_params(parsed.expr, doc_.params);
      doc_.scales.emplace(name, ScaleFunction::create(parsed.expr, var, domain, std::move(params)));
    } catch (const Error& e) {
      diagnose(at, e);
      failed_scales_.insert(name);
    }
  }

  void rule(Cursor& cur) {
    cur.skip_ws();
    const std::size_t at = cur.pos();
    std::string name = cur.identifier("rule name");
    require_fresh(cur, name, at);
    rule_names_.insert(name);
    cur.expect(':');

    std::string kind = "direct";
    if (auto w = cur.peek_word(); w == "bilinear" || w == "product" || w == "power") {
      kind = std::string(*w);
      cur.accept_word(kind);
    }

    std::vector<Item> items;
    std::optional<Interval> domain;
    while (!cur.at_end()) {
      if (kind == "power" && cur.peek_word() == "on") {
        cur.accept_word("on");
        domain = interval_at(cur, doc_.params);
        if (!cur.at_end()) cur.fail("unexpected text after domain", {"end of line"});
        break;
      }
      const std::size_t key_pos = cur.pos();
      std::string key = cur.identifier("key");
      cur.expect('=');
      cur.skip_ws();
      const std::size_t value_pos = cur.pos();
      std::string_view value = cur.token();
      if (value.empty()) throw ParseError("missing value for '" + key + "'", value_pos);
      for (const auto& it : items) {
        if (it.key == key) throw ParseError("duplicate key '" + key + "'", key_pos);
      }
      items.push_back({std::move(key), value, key_pos, value_pos});
    }

    RuleInfo info{name, ""};
    if (kind == "direct") {
      direct_rule(cur, at, items, std::move(info));
    } else if (kind == "bilinear") {
      bilinear_rule(cur, at, items, std::move(info));
    } else if (kind == "product") {
      product_rule(cur, at, items, std::move(info));
    } else {
      power_rule(cur, at, items, domain, std::move(info));
    }
  }

  static void check_keys(const std::vector<Item>& items, const std::vector<std::string>& allowed) {
    for (const auto& it : items) {
      bool known = false;
      for (const auto& k : allowed) known = known || k == it.key;
      if (!known) throw ParseError("unknown key '" + it.key + "'", it.key_pos, allowed);
    }
  }

  static const Item* find(const std::vector<Item>& items, std::string_view key) {
    for (const auto& it : items) {
      if (it.key == key) return &it;
    }
    return nullptr;
  }

  static const Item& require(const Cursor& cur, const std::vector<Item>& items, std::string_view key) {
    if (const Item* it = find(items, key)) return *it;
    throw ParseError("missing key '" + std::string(key) + "'", cur.line().size(), {std::string(key)});
  }

  /// nullptr when the scale failed to compile (already diagnosed).
  const ScaleFunction* scale_ref(const Item& item) {
    if (auto it = doc_.scales.find(item.value); it != doc_.scales.end()) return &it->second;
    if (failed_scales_.count(std::string(item.value))) return nullptr;
    std::vector<std::string> names;
    for (const auto& [n, s] : doc_.scales) names.push_back(n);
    throw ParseError("unknown scale '" + std::string(item.value) + "'", item.value_pos, std::move(names));
  }

  Op op_value(const Item* item) {
    if (!item) return Op::Plus;
    if (auto op = op_from_symbol(item->value)) return *op;
    throw ParseError("invalid operator '" + std::string(item->value) + "'", item->value_pos,
                     {"+", "-"});
  }

  double number(const Cursor& cur, const Item& item) {
    Cursor sub(cur.line());
    sub.seek(item.value_pos);
    const double v = constant_at(sub, doc_.params, item.value_pos + item.value.size());
    if (sub.pos() != item.value_pos + item.value.size()) {
      throw ParseError("malformed value for '" + item.key + "'", sub.pos());
    }
    return v;
  }

  void direct_rule(const Cursor& cur, std::size_t at, const std::vector<Item>& items, RuleInfo info) {
    check_keys(items, {"F", "f", "g", "op"});
    const ScaleFunction* F = scale_ref(require(cur, items, "F"));
    const ScaleFunction* f = scale_ref(require(cur, items, "f"));
    const ScaleFunction* g = scale_ref(require(cur, items, "g"));
    const Op op = op_value(find(items, "op"));
    if (!F || !f || !g) return;
    info.description = std::string(require(cur, items, "F").value) + " = " +
                       std::string(require(cur, items, "f").value) + " " + op_symbol(op) + " " +
                       std::string(require(cur, items, "g").value);
    compile(at, [&] { return compile_direct(*F, *f, *g, op, info); });
  }

  void bilinear_rule(const Cursor& cur, std::size_t at, const std::vector<Item>& items, RuleInfo info) {
    check_keys(items, {"a", "b", "c", "d", "e", "u", "v", "w"});
    const ScaleFunction* u = scale_ref(require(cur, items, "u"));
    const ScaleFunction* v = scale_ref(require(cur, items, "v"));
    const ScaleFunction* w = scale_ref(require(cur, items, "w"));
    auto coef = [&](std::string_view key, double fallback) {
      const Item* it = find(items, key);
      return it ? number(cur, *it) : fallback;
    };
    const double a = coef("a", 1.0), b = coef("b", 0.0), c = coef("c", 0.0), d = coef("d", -1.0),
                 e = coef("e", 0.0);
    if (!u || !v || !w) return;
    info.description = "bilinear form a*u*v + b*u + c*v + d*w + e = 0";
    compile(at, [&] { return compile_bilinear(BilinearForm{a, b, c, d, e, *u, *v, *w}, info); });
  }

  void product_rule(const Cursor& cur, std::size_t at, const std::vector<Item>& items, RuleInfo info) {
    check_keys(items, {"u", "v", "w"});
    const ScaleFunction* u = scale_ref(require(cur, items, "u"));
    const ScaleFunction* v = scale_ref(require(cur, items, "v"));
    const ScaleFunction* w = scale_ref(require(cur, items, "w"));
    if (!u || !v || !w) return;
    info.description = "product form u*v*w + u + v + w = 0";
    compile(at, [&] { return compile_product_form(*u, *v, *w, info); });
  }

  void power_rule(const Cursor& cur, std::size_t at, const std::vector<Item>& items,
                  std::optional<Interval> domain, RuleInfo info) {
    check_keys(items, {"alpha", "op"});
    const double alpha = number(cur, require(cur, items, "alpha"));
    const Op op = op_value(find(items, "op"));
    if (!domain) {
      domain = alpha < 0.0 ? Interval{1.0, std::numeric_limits<double>::infinity(), false, true}
                           : Interval::closed(0.0, 10.0);
    }
    compile(at, [&] { return compile_power_rule(alpha, op, *domain, info); });
  }

  template <typename Fn>
  void compile(std::size_t at, Fn&& fn) {
    try {
      doc_.rules.push_back(fn());
    } catch (const Error& e) {
      diagnose(at, e);
    }
  }

  void diagnose(std::size_t at, const Error& e) {
    std::optional<double> witness;
    if (auto* nm = dynamic_cast<const NotMonotone*>(&e)) witness = nm->witness();
    if (auto* pv = dynamic_cast<const PositivityViolation*>(&e)) witness = pv->witness();
    if (auto* ee = dynamic_cast<const EvalError*>(&e)) witness = ee->at();
    if (auto* de = dynamic_cast<const DomainError*>(&e)) witness = de->value();
    doc_.diagnostics.push_back({line_, at + 1, e.kind(), e.what(), witness});
  }

  DslDocument doc_;
  std::set<std::string, std::less<>> failed_scales_;
  std::set<std::string, std::less<>> rule_names_;
  std::size_t line_ = 0;
};

}  // namespace

DslDocument parse_dsl(std::string_view text) { return Reader().run(text); }

}  // namespace sliderule
