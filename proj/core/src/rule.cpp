#include "sliderule/rule.hpp"

namespace sliderule {

char op_symbol(Op op) { return op == Op::Plus ? '+' : '-'; }

std::optional<Op> op_from_symbol(std::string_view text) {
  if (text == "+" || text == "plus") return Op::Plus;
  if (text == "-" || text == "minus") return Op::Minus;
  return std::nullopt;
}

std::string_view to_string(RuleKind kind) {
  switch (kind) {
    case RuleKind::Direct:
      return "direct";
    case RuleKind::Bilinear:
      return "bilinear";
    case RuleKind::Product:
      return "product";
    case RuleKind::Power:
      return "power";
  }
  return "direct";
}

std::optional<RuleKind> rule_kind_from_string(std::string_view text) {
  for (RuleKind k : {RuleKind::Direct, RuleKind::Bilinear, RuleKind::Product, RuleKind::Power}) {
    if (to_string(k) == text) return k;
  }
  return std::nullopt;
}

double RuleSpec::evaluate(double x, double y) const {
  return invert_scale_fn(F, combine(f(x), g(y)));
}

bool same_function(const ScaleFunction& a, const ScaleFunction& b) {
  if (!(a.domain() == b.domain()) || a.params() != b.params()) return false;
  return a.expr() == b.expr().rename_variable(a.variable());
}

}  // namespace sliderule
