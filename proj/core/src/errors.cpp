#include "sliderule/errors.hpp"

#include <cmath>

#include "sliderule/format.hpp"

namespace sliderule {

Error::Error(std::string kind, const std::string& message)
    : std::runtime_error(message), kind_(std::move(kind)) {}

DomainError::DomainError(const std::string& message, double value)
    : Error("DomainError", message), value_(value) {}

EvalError::EvalError(const std::string& message, std::optional<double> at)
    : Error("EvalError", message), at_(at) {}

RangeError::RangeError(const std::string& message) : Error("RangeError", message) {}

NoConvergence::NoConvergence(const std::string& message, double residual)
    : Error("NoConvergence", message), residual_(residual) {}

namespace {

std::string with_expected(const std::string& message, const std::vector<std::string>& expected) {
  if (expected.empty()) return message;
  std::string out = message + " (expected ";
  for (std::size_t i = 0; i < expected.size(); ++i) {
    if (i > 0) out += i + 1 == expected.size() ? " or " : ", ";
    out += expected[i];
  }
  return out + ")";
}

}  // namespace

ParseError::ParseError(const std::string& message, std::size_t offset,
                       std::vector<std::string> expected)
    : Error("ParseError", with_expected(message, expected)),
      offset_(offset),
      expected_(std::move(expected)) {}

ParseError ParseError::at_location(std::size_t line, std::size_t column) const {
  ParseError copy = *this;
  copy.line_ = line;
  copy.column_ = column;
  return copy;
}

NotMonotone::NotMonotone(const std::string& message, double witness)
    : Error("NotMonotone", message), witness_(witness) {}

EmptyRule::EmptyRule(const std::string& message) : Error("EmptyRule", message) {}

PositivityViolation::PositivityViolation(const std::string& bracket, double witness, double value)
    : Error("PositivityViolation", "bracket " + bracket + " is " + format_number(value) +
                                       " (not positive) at " + format_number(witness)),
      bracket_(bracket),
      witness_(witness) {}

ZeroA::ZeroA() : Error("ZeroA", "bilinear coefficient a must be non-zero") {}

ZeroAlpha::ZeroAlpha() : Error("ZeroAlpha", "power rule exponent alpha must be non-zero") {}

namespace {

std::string off_scale_message(double needed, double available) {
  return "result mark at " + format_fixed(needed, 3) + " mm is off the scale (scale ends at " +
         format_fixed(available, 3) + " mm, overshoot " +
         format_fixed(std::abs(needed - available), 3) + " mm)";
}

}  // namespace

OffScale::OffScale(double needed_mm, double available_mm, std::optional<std::size_t> step)
    : Error("OffScale", off_scale_message(needed_mm, available_mm)),
      needed_mm_(needed_mm),
      available_mm_(available_mm),
      step_(step) {}

double OffScale::overshoot_mm() const noexcept { return std::abs(needed_mm_ - available_mm_); }

OffScale OffScale::at_step(std::size_t step) const {
  return OffScale(needed_mm_, available_mm_, step);
}

ChainUnsupported::ChainUnsupported(const std::string& message)
    : Error("ChainUnsupported", message) {}

DegenerateScale::DegenerateScale(const std::string& message)
    : Error("DegenerateScale", message) {}

namespace {

std::string unknown_entry_message(const std::string& name, const std::vector<std::string>& valid) {
  std::string out = "unknown catalog entry '" + name + "'; valid names:";
  for (const auto& v : valid) out += " " + v;
  return out;
}

}  // namespace

UnknownEntry::UnknownEntry(const std::string& name, const std::vector<std::string>& valid)
    : Error("UnknownEntry", unknown_entry_message(name, valid)) {}

}  // namespace sliderule
