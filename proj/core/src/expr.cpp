#include "sliderule/expr.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <utility>

#include "sliderule/errors.hpp"
#include "sliderule/format.hpp"
#include "sliderule/special.hpp"

namespace sliderule {

namespace {

struct IntrinsicInfo {
  Intrinsic fn;
  std::string_view name;
  std::size_t arity;
};

constexpr std::array<IntrinsicInfo, 12> kIntrinsics = {{
    {Intrinsic::Ln, "ln", 1},
    {Intrinsic::Log10, "log10", 1},
    {Intrinsic::Exp, "exp", 1},
    {Intrinsic::Sqrt, "sqrt", 1},
    {Intrinsic::Abs, "abs", 1},
    {Intrinsic::Arccos, "arccos", 1},
    {Intrinsic::Arcsin, "arcsin", 1},
    {Intrinsic::Sin, "sin", 1},
    {Intrinsic::Cos, "cos", 1},
    {Intrinsic::Tan, "tan", 1},
    {Intrinsic::LogGamma, "loggamma", 1},
    {Intrinsic::Pow, "pow", 2},
}};

const IntrinsicInfo& info(Intrinsic fn) {
  for (const auto& entry : kIntrinsics) {
    if (entry.fn == fn) return entry;
  }
  return kIntrinsics[0];
}

std::string shortest(double value) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

}  // namespace

std::string_view intrinsic_name(Intrinsic fn) { return info(fn).name; }

std::optional<Intrinsic> intrinsic_from_name(std::string_view name) {
  for (const auto& entry : kIntrinsics) {
    if (entry.name == name) return entry.fn;
  }
  return std::nullopt;
}

std::size_t intrinsic_arity(Intrinsic fn) { return info(fn).arity; }

// ---------------------------------------------------------------------------
// construction

Expr::Expr(std::shared_ptr<const ExprNode> node) : node_(std::move(node)) {}

Expr Expr::number(double value) {
  if (value < 0.0) return negate(number(-value));
  return number(value, shortest(value));
}

Expr Expr::number(double value, std::string text) {
  return Expr(std::make_shared<const ExprNode>(ExprNode{NumberNode{value, std::move(text)}}));
}

Expr Expr::symbol(std::string name, SymbolKind kind) {
  return Expr(std::make_shared<const ExprNode>(ExprNode{SymbolNode{std::move(name), kind}}));
}

Expr Expr::negate(Expr operand) {
  return Expr(std::make_shared<const ExprNode>(ExprNode{NegateNode{std::move(operand)}}));
}

Expr Expr::binary(BinaryOp op, Expr lhs, Expr rhs) {
  return Expr(
      std::make_shared<const ExprNode>(ExprNode{BinaryNode{op, std::move(lhs), std::move(rhs)}}));
}

Expr Expr::call(Intrinsic fn, std::vector<Expr> args) {
  return Expr(std::make_shared<const ExprNode>(ExprNode{CallNode{fn, std::move(args)}}));
}

// ---------------------------------------------------------------------------
// evaluation

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double checked(double value, const char* what, double x) {
  if (!std::isfinite(value)) {
    throw EvalError(std::string(what) + " is not finite at x = " + format_number(x), x);
  }
  return value;
}

double apply_intrinsic(Intrinsic fn, const double* args, double x) {
  const double a = args[0];
  auto fail = [x](const std::string& message) -> double { throw EvalError(message, x); };
  switch (fn) {
    case Intrinsic::Ln:
      if (!(a > 0.0)) return fail("ln of non-positive value " + format_number(a));
      return std::log(a);
    case Intrinsic::Log10:
      if (!(a > 0.0)) return fail("log10 of non-positive value " + format_number(a));
      return std::log10(a);
    case Intrinsic::Exp:
      return checked(std::exp(a), "exp", x);
    case Intrinsic::Sqrt:
      if (a < 0.0) return fail("sqrt of negative value " + format_number(a));
      return std::sqrt(a);
    case Intrinsic::Abs:
      return std::abs(a);
    case Intrinsic::Arccos:
      if (a < -1.0 || a > 1.0) return fail("arccos argument outside [-1, 1]: " + format_number(a));
      return std::acos(a);
    case Intrinsic::Arcsin:
      if (a < -1.0 || a > 1.0) return fail("arcsin argument outside [-1, 1]: " + format_number(a));
      return std::asin(a);
    case Intrinsic::Sin:
      return std::sin(a);
    case Intrinsic::Cos:
      return std::cos(a);
    case Intrinsic::Tan:
      return checked(std::tan(a), "tan", x);
    case Intrinsic::LogGamma:
      try {
        return log_gamma(a);
      } catch (const EvalError& e) {
        throw EvalError(e.what(), x);
      }
    case Intrinsic::Pow:
      break;
  }
  const double b = args[1];
  const double p = std::pow(a, b);
  if (std::isnan(p)) {
    return fail("power " + format_number(a) + "^" + format_number(b) + " is undefined");
  }
  return checked(p, "power", x);
}

double eval_node(const Expr& expr, double x, const ParamMap& params) {
  return std::visit(
      overloaded{
          [](const NumberNode& n) { return n.value; },
          [&](const SymbolNode& s) -> double {
            switch (s.kind) {
              case SymbolKind::Variable:
                return x;
              case SymbolKind::Constant:
                return std::numbers::pi;
              case SymbolKind::Parameter: {
                auto it = params.find(s.name);
                if (it == params.end()) throw EvalError("unbound parameter '" + s.name + "'", x);
                return it->second;
              }
              case SymbolKind::Unresolved:
                break;
            }
            throw EvalError("unresolved identifier '" + s.name + "'", x);
          },
          [&](const NegateNode& n) { return -eval_node(n.operand, x, params); },
          [&](const BinaryNode& b) -> double {
            const double lhs = eval_node(b.lhs, x, params);
            const double rhs = eval_node(b.rhs, x, params);
            switch (b.op) {
              case BinaryOp::Add:
                return checked(lhs + rhs, "sum", x);
              case BinaryOp::Sub:
                return checked(lhs - rhs, "difference", x);
              case BinaryOp::Mul:
                return checked(lhs * rhs, "product", x);
              case BinaryOp::Div:
                if (rhs == 0.0) throw EvalError("division by zero at x = " + format_number(x), x);
                return checked(lhs / rhs, "quotient", x);
              case BinaryOp::Pow: {
                const double args[2] = {lhs, rhs};
                return apply_intrinsic(Intrinsic::Pow, args, x);
              }
            }
            return 0.0;
          },
          [&](const CallNode& c) {
            double args[2] = {0.0, 0.0};
            for (std::size_t i = 0; i < c.args.size() && i < 2; ++i) {
              args[i] = eval_node(c.args[i], x, params);
            }
            return apply_intrinsic(c.fn, args, x);
          },
      },
      expr.node().value);
}

}  // namespace

double Expr::evaluate(double x, const ParamMap& params) const {
  return eval_node(*this, x, params);
}

// ---------------------------------------------------------------------------
// rewriting

namespace {

template <class Leaf>
Expr rewrite(const Expr& expr, const Leaf& leaf) {
  return std::visit(
      overloaded{
          [&](const NumberNode&) { return expr; },
          [&](const SymbolNode& s) { return leaf(expr, s); },
          [&](const NegateNode& n) { return Expr::negate(rewrite(n.operand, leaf)); },
          [&](const BinaryNode& b) {
            return Expr::binary(b.op, rewrite(b.lhs, leaf), rewrite(b.rhs, leaf));
          },
          [&](const CallNode& c) {
            std::vector<Expr> args;
            args.reserve(c.args.size());
            for (const auto& a : c.args) args.push_back(rewrite(a, leaf));
            return Expr::call(c.fn, std::move(args));
          },
      },
      expr.node().value);
}

}  // namespace

Expr Expr::bind(const ParamMap& params) const {
  return rewrite(*this, [&](const Expr& self, const SymbolNode& s) {
    if (s.kind != SymbolKind::Parameter) return self;
    auto it = params.find(s.name);
    if (it == params.end()) throw EvalError("unbound parameter '" + s.name + "'");
    // keep NumberNode non-negative
    return it->second < 0.0 ? Expr::negate(Expr::number(-it->second)) : Expr::number(it->second);
  });
}

Expr Expr::resolve(std::string_view variable, const ParamMap& params) const {
  return rewrite(*this, [&](const Expr& self, const SymbolNode& s) {
    if (s.kind != SymbolKind::Unresolved) return self;
    if (s.name == variable) return Expr::variable(s.name);
    if (params.contains(s.name)) return Expr::parameter(s.name);
    if (s.name == "pi") return Expr::symbol(s.name, SymbolKind::Constant);
    throw ParseError("unknown identifier '" + s.name + "'", 0);
  });
}

Expr Expr::rename_variable(const std::string& name) const {
  return rewrite(*this, [&](const Expr& self, const SymbolNode& s) {
    return s.kind == SymbolKind::Variable ? Expr::variable(name) : self;
  });
}

namespace {

void collect(const Expr& expr, SymbolKind kind, std::set<std::string>& out) {
  std::visit(overloaded{
                 [](const NumberNode&) {},
                 [&](const SymbolNode& s) {
                   if (s.kind == kind) out.insert(s.name);
                 },
                 [&](const NegateNode& n) { collect(n.operand, kind, out); },
                 [&](const BinaryNode& b) {
                   collect(b.lhs, kind, out);
                   collect(b.rhs, kind, out);
                 },
                 [&](const CallNode& c) {
                   for (const auto& a : c.args) collect(a, kind, out);
                 },
             },
             expr.node().value);
}

}  // namespace

std::set<std::string> Expr::symbols(SymbolKind kind) const {
  std::set<std::string> out;
  collect(*this, kind, out);
  return out;
}

// ---------------------------------------------------------------------------
// printing

namespace {

constexpr int kPrecAdd = 1;
constexpr int kPrecMul = 2;
constexpr int kPrecUnary = 3;
constexpr int kPrecPow = 4;
constexpr int kPrecAtom = 5;

int precedence(const Expr& expr) {
  return std::visit(overloaded{
                        [](const NumberNode&) { return kPrecAtom; },
                        [](const SymbolNode&) { return kPrecAtom; },
                        [](const NegateNode&) { return kPrecUnary; },
                        [](const BinaryNode& b) {
                          switch (b.op) {
                            case BinaryOp::Add:
                            case BinaryOp::Sub:
                              return kPrecAdd;
                            case BinaryOp::Mul:
                            case BinaryOp::Div:
                              return kPrecMul;
                            case BinaryOp::Pow:
                              return kPrecPow;
                          }
                          return kPrecAtom;
                        },
                        [](const CallNode&) { return kPrecAtom; },
                    },
                    expr.node().value);
}

void print(const Expr& expr, std::string& out);

void print_wrapped(const Expr& expr, bool parens, std::string& out) {
  if (parens) out += '(';
  print(expr, out);
  if (parens) out += ')';
}

char op_char(BinaryOp op) {
  switch (op) {
    case BinaryOp::Add:
      return '+';
    case BinaryOp::Sub:
      return '-';
    case BinaryOp::Mul:
      return '*';
    case BinaryOp::Div:
      return '/';
    case BinaryOp::Pow:
      return '^';
  }
  return '?';
}

void print(const Expr& expr, std::string& out) {
  std::visit(overloaded{
                 [&](const NumberNode& n) { out += n.text; },
                 [&](const SymbolNode& s) { out += s.name; },
                 [&](const NegateNode& n) {
                   out += '-';
                   print_wrapped(n.operand, precedence(n.operand) < kPrecUnary, out);
                 },
                 [&](const BinaryNode& b) {
                   const int lp = precedence(b.lhs);
                   const int rp = precedence(b.rhs);
                   bool lparen = false;
                   bool rparen = false;
                   switch (b.op) {
                     case BinaryOp::Add:
                     case BinaryOp::Sub:
                       rparen = rp <= kPrecAdd;
                       break;
                     case BinaryOp::Mul:
                     case BinaryOp::Div:
                       lparen = lp < kPrecMul;
                       rparen = rp <= kPrecMul;
                       break;
                     case BinaryOp::Pow:
                       lparen = lp <= kPrecPow;
                       rparen = rp < kPrecUnary;
                       break;
                   }
                   print_wrapped(b.lhs, lparen, out);
                   out += op_char(b.op);
                   print_wrapped(b.rhs, rparen, out);
                 },
                 [&](const CallNode& c) {
                   out += intrinsic_name(c.fn);
                   out += '(';
                   for (std::size_t i = 0; i < c.args.size(); ++i) {
                     if (i > 0) out += ',';
                     print(c.args[i], out);
                   }
                   out += ')';
                 },
             },
             expr.node().value);
}

}  // namespace

std::string Expr::to_string() const {
  std::string out;
  print(*this, out);
  return out;
}

bool operator==(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return true;
  const auto& av = a.node().value;
  const auto& bv = b.node().value;
  if (av.index() != bv.index()) return false;
  return std::visit(
      overloaded{
          [&](const NumberNode& n) { return n.value == std::get<NumberNode>(bv).value; },
          [&](const SymbolNode& s) {
            const auto& o = std::get<SymbolNode>(bv);
            return s.name == o.name && s.kind == o.kind;
          },
          [&](const NegateNode& n) { return n.operand == std::get<NegateNode>(bv).operand; },
          [&](const BinaryNode& n) {
            const auto& o = std::get<BinaryNode>(bv);
            return n.op == o.op && n.lhs == o.lhs && n.rhs == o.rhs;
          },
          [&](const CallNode& n) {
            const auto& o = std::get<CallNode>(bv);
            return n.fn == o.fn && n.args == o.args;
          },
      },
      av);
}

// ---------------------------------------------------------------------------
// parsing
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' unary)?
//   primary := number | identifier | identifier '(' expr (',' expr)* ')' | '(' expr ')'

namespace {

enum class TokenKind { Number, Identifier, Plus, Minus, Star, Slash, Caret, LParen, RParen, Comma, End, Invalid };

struct Token {
  TokenKind kind;
  std::size_t begin;
  std::size_t end;
  double number = 0.0;
};

class Parser {
 public:
  Parser(std::string_view text, std::size_t offset, const ParseContext* context)
      : text_(text), pos_(offset), context_(context) {
    advance();
  }

  Expr parse_expr() {
    Expr lhs = parse_term();
    while (current_.kind == TokenKind::Plus || current_.kind == TokenKind::Minus) {
      const BinaryOp op = current_.kind == TokenKind::Plus ? BinaryOp::Add : BinaryOp::Sub;
      advance();
      lhs = Expr::binary(op, std::move(lhs), parse_term());
    }
    return lhs;
  }

  const Token& current() const { return current_; }
  std::size_t last_end() const { return last_end_; }

  [[noreturn]] void fail(const std::string& message, std::vector<std::string> expected) const {
    throw ParseError(message, current_.begin, std::move(expected));
  }

  std::string describe(const Token& t) const {
    if (t.kind == TokenKind::End) return "end of input";
    return "'" + std::string(text_.substr(t.begin, t.end - t.begin)) + "'";
  }

 private:
  Expr parse_term() {
    Expr lhs = parse_unary();
    while (current_.kind == TokenKind::Star || current_.kind == TokenKind::Slash) {
      const BinaryOp op = current_.kind == TokenKind::Star ? BinaryOp::Mul : BinaryOp::Div;
      advance();
      lhs = Expr::binary(op, std::move(lhs), parse_unary());
    }
    return lhs;
  }

  Expr parse_unary() {
    if (current_.kind == TokenKind::Minus) {
      advance();
      return Expr::negate(parse_unary());
    }
    return parse_power();
  }

  Expr parse_power() {
    Expr base = parse_primary();
    if (current_.kind == TokenKind::Caret) {
      advance();
      return Expr::binary(BinaryOp::Pow, std::move(base), parse_unary());
    }
    return base;
  }

  Expr parse_primary() {
    const Token tok = current_;
    switch (tok.kind) {
      case TokenKind::Number: {
        advance();
        return Expr::number(tok.number, std::string(text_.substr(tok.begin, tok.end - tok.begin)));
      }
      case TokenKind::Identifier: {
        const std::string name(text_.substr(tok.begin, tok.end - tok.begin));
        advance();
        if (current_.kind == TokenKind::LParen) return parse_call(name, tok);
        return make_symbol(name, tok);
      }
      case TokenKind::LParen: {
        advance();
        Expr inner = parse_expr();
        expect(TokenKind::RParen, "')'");
        return inner;
      }
      default:
        fail("unexpected " + describe(tok), {"number", "identifier", "'('", "'-'"});
    }
  }

  Expr parse_call(const std::string& name, const Token& name_tok) {
    auto fn = intrinsic_from_name(name);
    if (!fn) {
      throw ParseError("unknown function '" + name + "'", name_tok.begin,
                       {"ln", "log10", "exp", "sqrt", "abs", "arccos", "arcsin", "sin", "cos", "tan",
                        "loggamma", "pow"});
    }
    advance();  // '('
    std::vector<Expr> args;
    args.push_back(parse_expr());
    while (current_.kind == TokenKind::Comma) {
      advance();
      args.push_back(parse_expr());
    }
    if (current_.kind != TokenKind::RParen) fail("unexpected " + describe(current_), {"','", "')'"});
    if (args.size() != intrinsic_arity(*fn)) {
      throw ParseError(name + " takes " + std::to_string(intrinsic_arity(*fn)) + " argument(s), got " +
                           std::to_string(args.size()),
                       name_tok.begin);
    }
    advance();
    return Expr::call(*fn, std::move(args));
  }

  Expr make_symbol(const std::string& name, const Token& tok) const {
    if (context_ == nullptr) {
      return Expr::symbol(name, name == "pi" ? SymbolKind::Constant : SymbolKind::Unresolved);
    }
    if (context_->variable && *context_->variable == name) return Expr::variable(name);
    if (context_->parameters.contains(name)) return Expr::parameter(name);
    if (name == "pi") return Expr::symbol(name, SymbolKind::Constant);
    std::vector<std::string> expected;
    if (context_->variable) expected.push_back("variable '" + *context_->variable + "'");
    for (const auto& p : context_->parameters) expected.push_back("parameter '" + p + "'");
    throw ParseError("unknown identifier '" + name + "'", tok.begin, std::move(expected));
  }

  void expect(TokenKind kind, const char* what) {
    if (current_.kind != kind) fail("unexpected " + describe(current_), {what});
    advance();
  }

  void advance() {
    last_end_ = current_.end;
    current_ = lex();
  }

  Token lex() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    const std::size_t begin = pos_;
    if (pos_ >= text_.size()) return {TokenKind::End, begin, begin};
    const char c = text_[pos_];
    auto single = [&](TokenKind kind) {
      ++pos_;
      return Token{kind, begin, pos_};
    };
    switch (c) {
      case '+':
        return single(TokenKind::Plus);
      case '-':
        return single(TokenKind::Minus);
      case '*':
        return single(TokenKind::Star);
      case '/':
        return single(TokenKind::Slash);
      case '^':
        return single(TokenKind::Caret);
      case '(':
        return single(TokenKind::LParen);
      case ')':
        return single(TokenKind::RParen);
      case ',':
        return single(TokenKind::Comma);
      default:
        break;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '.' && pos_ + 1 < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])))) {
      return lex_number(begin);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      return {TokenKind::Identifier, begin, pos_};
    }
    return {TokenKind::Invalid, begin, begin + 1};
  }

  Token lex_number(std::size_t begin) {
    auto digits = [&] {
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    };
    digits();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      digits();
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t look = pos_ + 1;
      if (look < text_.size() && (text_[look] == '+' || text_[look] == '-')) ++look;
      if (look < text_.size() && std::isdigit(static_cast<unsigned char>(text_[look]))) {
        pos_ = look;
        digits();
      }
    }
    double value = 0.0;
    const char* first = text_.data() + begin;
    auto res = std::from_chars(first, text_.data() + pos_, value);
    if (res.ec != std::errc() || res.ptr != text_.data() + pos_) {
      throw ParseError("malformed number", begin, {"number"});
    }
    return {TokenKind::Number, begin, pos_, value};
  }

  std::string_view text_;
  std::size_t pos_;
  const ParseContext* context_;
  Token current_{TokenKind::End, 0, 0};
  std::size_t last_end_ = 0;
};

Expr parse_complete(std::string_view text, const ParseContext* context) {
  bool blank = true;
  for (char c : text) blank = blank && std::isspace(static_cast<unsigned char>(c));
  if (blank) throw ParseError("empty expression", 0, {"number", "identifier", "'('", "'-'"});
  Parser parser(text, 0, context);
  Expr expr = parser.parse_expr();
  if (parser.current().kind != TokenKind::End) {
    parser.fail("unexpected " + parser.describe(parser.current()),
                {"'+'", "'-'", "'*'", "'/'", "'^'", "end of input"});
  }
  return expr;
}

}  // namespace

Expr parse_expression(std::string_view text) { return parse_complete(text, nullptr); }

Expr parse_expression(std::string_view text, const ParseContext& context) {
  return parse_complete(text, &context);
}

PrefixParse parse_expression_prefix(std::string_view text, std::size_t offset,
                                    const ParseContext* context) {
  Parser parser(text, offset, context);
  Expr expr = parser.parse_expr();
  return {std::move(expr), parser.last_end()};
}

}  // namespace sliderule
