#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace sliderule {

using ParamMap = std::map<std::string, double, std::less<>>;

enum class BinaryOp { Add, Sub, Mul, Div, Pow };

enum class Intrinsic { Ln, Log10, Exp, Sqrt, Abs, Arccos, Arcsin, Sin, Cos, Tan, LogGamma, Pow };

enum class SymbolKind {
  Unresolved,  // parsed without a context; must be resolved before evaluation
  Variable,
  Parameter,
  Constant,  // pi
};

std::string_view intrinsic_name(Intrinsic fn);
std::optional<Intrinsic> intrinsic_from_name(std::string_view name);
std::size_t intrinsic_arity(Intrinsic fn);

struct ExprNode;

/// Immutable expression tree over one real variable. Copies share nodes.
class Expr {
 public:
  explicit Expr(std::shared_ptr<const ExprNode> node);

  static Expr number(double value);
  static Expr number(double value, std::string text);
  static Expr symbol(std::string name, SymbolKind kind);
  static Expr variable(std::string name) { return symbol(std::move(name), SymbolKind::Variable); }
  static Expr parameter(std::string name) { return symbol(std::move(name), SymbolKind::Parameter); }
  static Expr negate(Expr operand);
  static Expr binary(BinaryOp op, Expr lhs, Expr rhs);
  static Expr call(Intrinsic fn, std::vector<Expr> args);

  const ExprNode& node() const { return *node_; }

  /// Evaluates with `x` bound to the variable and parameters looked up in
  /// `params`. Throws EvalError where the expression is undefined.
  double evaluate(double x, const ParamMap& params = {}) const;

  /// Copy with every parameter replaced by its numeric value.
  Expr bind(const ParamMap& params) const;

  /// Copy with unresolved symbols classified against `variable` and `params`.
  /// Throws ParseError (offset 0) for a name that is neither.
  Expr resolve(std::string_view variable, const ParamMap& params) const;

  /// Copy with the variable renamed.
  Expr rename_variable(const std::string& name) const;

  /// Names of all symbols of the given kind, sorted.
  std::set<std::string> symbols(SymbolKind kind) const;

  /// Minimal-parenthesis rendering that parses back to an equal tree.
  std::string to_string() const;

  friend bool operator==(const Expr& a, const Expr& b);

 private:
  std::shared_ptr<const ExprNode> node_;
};

struct NumberNode {
  double value;
  std::string text;  // source spelling, reproduced by to_string()
};

struct SymbolNode {
  std::string name;
  SymbolKind kind;
};

struct NegateNode {
  Expr operand;
};

struct BinaryNode {
  BinaryOp op;
  Expr lhs;
  Expr rhs;
};

struct CallNode {
  Intrinsic fn;
  std::vector<Expr> args;
};

struct ExprNode {
  std::variant<NumberNode, SymbolNode, NegateNode, BinaryNode, CallNode> value;
};

/// Names accepted by a contextual parse: the single free variable and the
/// bound parameter names. `pi` is always accepted.
struct ParseContext {
  std::optional<std::string> variable;
  std::set<std::string, std::less<>> parameters;
};

/// Parses the complete text. Without a context identifiers stay unresolved;
/// with one, unknown identifiers are rejected at their byte offset.
Expr parse_expression(std::string_view text);
Expr parse_expression(std::string_view text, const ParseContext& context);

struct PrefixParse {
  Expr expr;
  std::size_t end;  // byte offset one past the last consumed token
};

/// Parses the longest expression starting at `offset`; trailing text is left
/// for the caller. Used by the DSL reader.
PrefixParse parse_expression_prefix(std::string_view text, std::size_t offset,
                                    const ParseContext* context);

}  // namespace sliderule
