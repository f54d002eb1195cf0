#include "sliderule/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "sliderule/compiler.hpp"
#include "sliderule/errors.hpp"

namespace sliderule {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Builder {
  std::string name;
  std::string description;
  std::vector<CatalogParameter> parameters;
  std::string x_name;
  std::string y_name;
  std::string z_name;
  std::function<RuleSpec(const ParamMap&, const RuleInfo&)> build;
  std::function<void(double, double)> precondition;
};

ParamMap pick(const ParamMap& all, std::initializer_list<const char*> names) {
  ParamMap out;
  for (const char* n : names) out.emplace(n, all.find(n)->second);
  return out;
}

ScaleFunction sf(std::string_view text, const char* var, Interval domain, ParamMap params = {}) {
  return ScaleFunction::parse(text, var, domain, std::move(params));
}

RuleSpec power(double alpha, Interval domain, const RuleInfo& info) {
  return compile_power_rule(alpha, Op::Plus, domain, info);
}

RuleSpec horizon(const ParamMap& p, const RuleInfo& info) {
  const double R = p.at("R");
  const double top = R / 6371.0;  // 1 km for R in metres
  const ParamMap r = pick(p, {"R"});
  ScaleFunction f = sf("R*arcsin(sqrt(h*(2*R+h))/(R+h))", "h", Interval::closed(0.0, top), r);
  ScaleFunction g = sf("R*arcsin(sqrt(t*(2*R+t))/(R+t))", "t", Interval::closed(0.0, top), r);
  const double reach = f.value_max() + g.value_max();
  return compile_direct(sf("z", "z", Interval::closed(0.0, reach)), f, g, Op::Plus, info);
}

std::pair<double, double> power_range(double lo, double hi, double exponent) {
  const double a = std::pow(lo, exponent);
  const double b = std::pow(hi, exponent);
  return {std::min(a, b), std::max(a, b)};
}

RuleSpec x_pow_a_y_pow_b(const ParamMap& p, const RuleInfo& info) {
  const auto [u0, u1] = power_range(1.0, 10.0, p.at("a"));
  const auto [v0, v1] = power_range(1.0, 10.0, p.at("b"));
  BilinearForm form{
      .a = 1.0, .b = 0.0, .c = 0.0, .d = -1.0, .e = 0.0,
      .u = sf("x^a", "x", Interval::closed(1.0, 10.0), pick(p, {"a"})),
      .v = sf("y^b", "y", Interval::closed(1.0, 10.0), pick(p, {"b"})),
      .w = sf("z", "z", Interval::closed(u0 * v0, u1 * v1)),
  };
  return compile_bilinear(form, info);
}

RuleSpec t_rule(const ParamMap& p, const RuleInfo& info) {
  const double a = p.at("a"), b = p.at("b"), c = p.at("c"), d = p.at("d");
  const auto [u0, u1] = power_range(std::min(a + b, 10.0 * a + b), std::max(a + b, 10.0 * a + b), p.at("p"));
  const auto [v0, v1] = power_range(std::min(c + d, 10.0 * c + d), std::max(c + d, 10.0 * c + d), p.at("q"));
  BilinearForm form{
      .a = 1.0, .b = 0.0, .c = 0.0, .d = -1.0, .e = 0.0,
      .u = sf("(a*S+b)^p", "S", Interval::closed(1.0, 10.0), pick(p, {"a", "b", "p"})),
      .v = sf("(c*R+d)^q", "R", Interval::closed(1.0, 10.0), pick(p, {"c", "d", "q"})),
      .w = sf("T", "T", Interval::closed(u0 * v0, u1 * v1)),
  };
  return compile_bilinear(form, info);
}

RuleSpec cone_volume(const ParamMap&, const RuleInfo& info) {
  BilinearForm form{
      .a = std::numbers::pi / 3.0, .b = 0.0, .c = 0.0, .d = -1.0, .e = 0.0,
      .u = sf("r^2", "r", Interval::closed(1.0, 10.0)),
      .v = sf("m", "m", Interval::closed(1.0, 10.0)),
      .w = sf("V", "V", Interval::closed(1.0, 1100.0)),
  };
  return compile_bilinear(form, info);
}

const std::vector<Builder>& registry() {
  static const std::vector<Builder> builders = [] {
    std::vector<Builder> b;
    b.push_back({"replus",
                 "Replus, reciprocal addition 1/z = 1/x + 1/y on 1/x scales whose origin is the infinity mark. "
                 "Used for optical power, parallel resistors, parallel work, incircles of triangles and, "
                 "repeated and multiplied by n, harmonic means.",
                 {}, "x", "y", "z",
                 [](const ParamMap&, const RuleInfo& info) { return power(-1.0, {1.0, kInf, false, true}, info); },
                 {}});
    b.push_back({"quadplus",
                 "Quadplus, Pythagorean addition z^2 = x^2 + y^2 on quadratic scales; repeated movements give "
                 "higher-dimensional Pythagoras and, divided by sqrt(n), the quadratic mean (the joiner's "
                 "rectangle diagonal d = sqrt((e^2 + f^2)/2)).",
                 {}, "x", "y", "z",
                 [](const ParamMap&, const RuleInfo& info) { return power(2.0, Interval::closed(0.0, 20.0), info); },
                 {}});
    b.push_back({"power",
                 "z^alpha = x^alpha + y^alpha on x^alpha scales, for any alpha != 0; the building block of the "
                 "general mean H_alpha (springs, inductors, resistors, optics, dispersion).",
                 {{"alpha", 2.0, "exponent, nonzero"}}, "x", "y", "z",
                 [](const ParamMap& p, const RuleInfo& info) {
                   return power(p.at("alpha"), Interval::closed(0.5, 20.0), info);
                 },
                 {}});
    b.push_back({"tangent_circles",
                 "Radii of three circles tangent to each other and to a line: 1/sqrt(r1) = 1/sqrt(r2) + "
                 "1/sqrt(r3), the x^alpha scale with alpha = -1/2.",
                 {}, "r2", "r3", "r1",
                 [](const ParamMap&, const RuleInfo& info) { return power(-0.5, {0.25, kInf, false, true}, info); },
                 {}});
    b.push_back({"serial_inductors",
                 "Inductance of serial inductors, sqrt(L3) = sqrt(L1) + sqrt(L2): the alpha = 1/2 scale.",
                 {}, "L1", "L2", "L3",
                 [](const ParamMap&, const RuleInfo& info) { return power(0.5, Interval::closed(0.0, 100.0), info); },
                 {}});
    b.push_back({"quadratic_solver",
                 "Half-part sqrt(p^2/4 - q) of the solver of x^2 + px + q = 0: f(p) = p^2/4, g(q) = q, "
                 "F(z) = z^2, subtracting. Roots are -p/2 +- z.",
                 {}, "p", "q", "z",
                 [](const ParamMap&, const RuleInfo& info) {
                   return compile_direct(sf("z^2", "z", Interval::closed(0.0, 6.0)),
                                         sf("p^2/4", "p", Interval::closed(0.0, 10.0)),
                                         sf("q", "q", Interval::closed(-10.0, 10.0)), Op::Minus, info);
                 },
                 [](double p, double q) {
                   if (p * p / 4 < q) throw DomainError("quadratic_solver needs p^2/4 >= q (real roots)", q);
                 }});
    b.push_back({"cubic_solver",
                 "Half-part sqrt(p^3/27 + q^2/4) of the cubic solver (Cardano): f(p) = p^3/27, g(q) = q^2/4, "
                 "F(z) = z^2.",
                 {}, "p", "q", "z",
                 [](const ParamMap&, const RuleInfo& info) {
                   return compile_direct(sf("z^2", "z", Interval::closed(0.0, 10.0)),
                                         sf("p^3/27", "p", Interval::closed(-10.0, 10.0)),
                                         sf("q^2/4", "q", Interval::closed(0.0, 10.0)), Op::Plus, info);
                 },
                 {}});
    b.push_back({"lorentz",
                 "Relativistic mass M/sqrt(1 - v^2/c^2): f(M) = ln M, g(v) = -ln(1 - v^2/c^2)/2, F(z) = ln z. "
                 "v ranges over [0, 0.99c].",
                 {{"c", 1.0, "speed of light in the unit of v"}}, "M", "v", "z",
                 [](const ParamMap& p, const RuleInfo& info) {
                   const double c = p.at("c");
                   return compile_direct(sf("ln(z)", "z", Interval::closed(1.0, 100.0)),
                                         sf("ln(M)", "M", Interval::closed(1.0, 10.0)),
                                         sf("-0.5*ln(1 - v^2/c^2)", "v", Interval::closed(0.0, 0.99 * c), pick(p, {"c"})),
                                         Op::Plus, info);
                 },
                 {}});
    b.push_back({"factorial_product",
                 "n! * k! with f = g = ln(Gamma(x + 1)) and F = ln z; non-integer arguments use the Gamma "
                 "function.",
                 {}, "n", "k", "z",
                 [](const ParamMap&, const RuleInfo& info) {
                   return compile_direct(sf("ln(z)", "z", Interval::closed(0.5, 1e37)),
                                         sf("loggamma(n+1)", "n", Interval::closed(0.5, 20.0)),
                                         sf("loggamma(k+1)", "k", Interval::closed(0.5, 20.0)), Op::Plus, info);
                 },
                 {}});
    b.push_back({"factorial_quotient",
                 "n! / k! on the factorial scales, subtracting; requires n >= k.",
                 {}, "n", "k", "z",
                 [](const ParamMap&, const RuleInfo& info) {
                   return compile_direct(sf("ln(z)", "z", Interval::closed(0.5, 1e19)),
                                         sf("loggamma(n+1)", "n", Interval::closed(0.5, 20.0)),
                                         sf("loggamma(k+1)", "k", Interval::closed(0.5, 20.0)), Op::Minus, info);
                 },
                 [](double n, double k) {
                   if (n < k) throw DomainError("factorial_quotient needs n >= k", n);
                 }});
    b.push_back({"horizon",
                 "Sailor's horizon: an observer at height h sees the top of a tower of height t at surface "
                 "distance z = R*arccos(R/(R+h)) + R*arccos(R/(R+t)), evaluated as the equivalent arcsin form. "
                 "Heights up to R/6371 (1 km for R in m).",
                 {{"R", 6371000.0, "Earth radius, in the unit of h, t and z"}}, "h", "t", "z", horizon, {}});
    b.push_back({"power_tower",
                 "z = x^y on log-log (LL) scales: ln(ln z) = ln y + ln(ln x); x, z in (e^0.1, e^10], "
                 "y in [0.1, 10].",
                 {}, "x", "y", "z",
                 [](const ParamMap&, const RuleInfo& info) {
                   const Interval ll{std::exp(0.1), std::exp(10.0), true, false};
                   return compile_direct(sf("ln(ln(x))", "x", ll), sf("ln(ln(x))", "x", ll),
                                         sf("ln(y)", "y", Interval::closed(0.1, 10.0)), Op::Plus, info);
                 },
                 {}});
    b.push_back({"product_xy",
                 "Multiplication z = x*y as the bilinear form x*y - z = 0: the classic C/D scales.",
                 {}, "x", "y", "z",
                 [](const ParamMap&, const RuleInfo& info) {
                   return compile_bilinear({1.0, 0.0, 0.0, -1.0, 0.0, sf("x", "x", Interval::closed(1.0, 10.0)),
                                            sf("y", "y", Interval::closed(1.0, 10.0)),
                                            sf("z", "z", Interval::closed(1.0, 100.0))},
                                           info);
                 },
                 {}});
    b.push_back({"x_pow_a_y_pow_b",
                 "z = x^a * y^b (many laws of physics) as the bilinear form x^a * y^b - z = 0, x, y in [1, 10].",
                 {{"a", 2.0, "exponent of x"}, {"b", 3.0, "exponent of y"}}, "x", "y", "z", x_pow_a_y_pow_b, {}});
    b.push_back({"snell",
                 "Law of sines (Snell-Descartes): sin(t1)/sin(t2) = n2/n1 with f = ln sin t1, g = ln sin t2 in "
                 "degrees, F = ln z, subtracting.",
                 {}, "t1", "t2", "z",
                 [](const ParamMap&, const RuleInfo& info) {
                   return compile_direct(sf("ln(z)", "z", Interval::closed(0.01, 100.0)),
                                         sf("ln(sin(t1*pi/180))", "t1", Interval::closed(1.0, 89.0)),
                                         sf("ln(sin(t2*pi/180))", "t2", Interval::closed(1.0, 89.0)), Op::Minus, info);
                 },
                 {}});
    b.push_back({"t_rule",
                 "T(S, R) = (a*S + b)^p * (c*R + d)^q, S, R in [1, 10]. The nomogram formula writes the "
                 "exponents as a and b again; here they are the independent p and q.",
                 {{"a", 1.0, "slope of S"}, {"b", 1.0, "offset of S"}, {"c", 1.0, "slope of R"},
                  {"d", 1.0, "offset of R"}, {"p", 1.0, "exponent of the S factor"},
                  {"q", 1.0, "exponent of the R factor"}},
                 "S", "R", "T", t_rule, {}});
    b.push_back({"cone_volume",
                 "Cone volume V = pi*r^2*m/3 as the bilinear form (pi/3)*r^2*m - V = 0.",
                 {}, "r", "m", "V", cone_volume, {}});
    b.push_back({"log_base",
                 "z = log_a(b) = ln b / ln a: ln z = ln(ln b) - ln(ln a), a, b in [1.5, 1000].",
                 {}, "b", "a", "z",
                 [](const ParamMap&, const RuleInfo& info) {
                   return compile_direct(sf("ln(z)", "z", Interval::closed(0.05, 20.0)),
                                         sf("ln(ln(b))", "b", Interval::closed(1.5, 1000.0)),
                                         sf("ln(ln(a))", "a", Interval::closed(1.5, 1000.0)), Op::Minus, info);
                 },
                 {}});
    return b;
  }();
  return builders;
}

}  // namespace

CatalogEntry builtin(std::string_view name, const ParamMap& bindings) {
  const auto& reg = registry();
  auto it = std::find_if(reg.begin(), reg.end(), [&](const Builder& b) { return b.name == name; });
  if (it == reg.end()) throw UnknownEntry(std::string(name), builtin_names());

  ParamMap params;
  for (const auto& p : it->parameters) params.emplace(p.name, p.default_value);
  for (const auto& [key, value] : bindings) {
    auto slot = params.find(key);
    if (slot == params.end()) {
      std::string valid;
      for (const auto& p : it->parameters) valid += (valid.empty() ? "" : ", ") + p.name;
      throw Error("UnknownParameter", it->name + " takes no parameter '" + key + "'" +
                                          (valid.empty() ? "" : " (parameters: " + valid + ")"));
    }
    slot->second = value;
  }

  RuleSpec rule = it->build(params, RuleInfo{it->name, it->description});
  if (auto diags = validate_rule(rule); !diags.empty()) {
    throw Error(diags.front().kind, it->name + ": " + diags.front().message);
  }
  return CatalogEntry{it->name, std::move(rule), it->description, it->parameters, std::move(params),
                      it->x_name, it->y_name, it->z_name, it->precondition};
}

std::vector<CatalogInfo> list_builtins() {
  std::vector<CatalogInfo> out;
  for (const auto& b : registry()) out.push_back({b.name, b.description, b.parameters});
  return out;
}

std::vector<std::string> builtin_names() {
  std::vector<std::string> out;
  for (const auto& b : registry()) out.push_back(b.name);
  return out;
}

}  // namespace sliderule
