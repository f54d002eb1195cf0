#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "sliderule/rule.hpp"

namespace sliderule {

struct CatalogParameter {
  std::string name;
  double default_value;
  std::string description;
};

/// A ready-made rule. x, y, z name the rule's variables in the order the
/// simulator takes them (f's, g's, F's).
struct CatalogEntry {
  std::string name;
  RuleSpec rule;
  std::string description;
  std::vector<CatalogParameter> parameters;
  ParamMap bindings;  // effective values, defaults filled in
  std::string x_name;
  std::string y_name;
  std::string z_name;
  /// Extra input condition beyond the scale domains; throws DomainError.
  std::function<void(double x, double y)> precondition;

  void check_inputs(double x, double y) const {
    if (precondition) precondition(x, y);
  }
};

struct CatalogInfo {
  std::string name;
  std::string description;
  std::vector<CatalogParameter> parameters;
};

/// Builds a named entry. Throws UnknownEntry for an unknown name and
/// Error("UnknownParameter") for a binding the entry does not take.
CatalogEntry builtin(std::string_view name, const ParamMap& bindings = {});

/// Every entry in a stable order.
std::vector<CatalogInfo> list_builtins();
std::vector<std::string> builtin_names();

}  // namespace sliderule
