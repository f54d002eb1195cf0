#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sliderule/scale.hpp"

namespace sliderule {

enum class Op { Plus, Minus };

char op_symbol(Op op);
std::optional<Op> op_from_symbol(std::string_view text);

enum class RuleKind { Direct, Bilinear, Product, Power };

std::string_view to_string(RuleKind kind);
std::optional<RuleKind> rule_kind_from_string(std::string_view text);

/// a*u(x)*v(y) + b*u(x) + c*v(y) + d*w(z) + e = 0
struct BilinearForm {
  double a = 1.0;
  double b = 0.0;
  double c = 0.0;
  double d = -1.0;
  double e = 0.0;
  ScaleFunction u;
  ScaleFunction v;
  ScaleFunction w;
};

/// u*v*w + u + v + w = 0
struct ProductForm {
  ScaleFunction u;
  ScaleFunction v;
  ScaleFunction w;
};

/// One relation in additive form F(z) = f(x) op g(y).
struct RuleSpec {
  std::string name;
  ScaleFunction F;
  ScaleFunction f;
  ScaleFunction g;
  Op op = Op::Plus;
  bool shares_F_f = false;
  std::string description;
  Interval result_domain;
  RuleKind kind = RuleKind::Direct;
  std::optional<double> alpha;                // power rules
  std::optional<BilinearForm> bilinear;       // compiled from a bilinear form
  std::optional<ProductForm> product;         // compiled from the product form
  std::vector<std::string> notes;

  double combine(double fx, double gy) const { return op == Op::Plus ? fx + gy : fx - gy; }

  /// F^{-1}(f(x) op g(y)) computed directly, no physical strips involved.
  double evaluate(double x, double y) const;
};

/// True when a and b are the same function on the same domain, up to the
/// name of the variable.
bool same_function(const ScaleFunction& a, const ScaleFunction& b);

}  // namespace sliderule
