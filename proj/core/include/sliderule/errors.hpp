#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sliderule {

/// Base of every error raised by the library. The kind() name is stable and is
/// what the CLI prints in diagnostics.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& message);

  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

/// Argument outside the declared domain of a scale function.
class DomainError : public Error {
 public:
  DomainError(const std::string& message, double value);
  double value() const noexcept { return value_; }

 private:
  double value_;
};

/// Expression undefined at a point (log of a non-positive number, ...).
class EvalError : public Error {
 public:
  EvalError(const std::string& message, std::optional<double> at = std::nullopt);
  std::optional<double> at() const noexcept { return at_; }

 private:
  std::optional<double> at_;
};

/// Function value or strip position outside what a scale can represent.
class RangeError : public Error {
 public:
  explicit RangeError(const std::string& message);
};

class NoConvergence : public Error {
 public:
  NoConvergence(const std::string& message, double residual);
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// Syntax error in an expression or a DSL file. offset is a byte offset into
/// the text handed to the parser; line/column are 1-based when known.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t offset,
             std::vector<std::string> expected = {});

  std::size_t offset() const noexcept { return offset_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

  /// Returns a copy positioned in a larger document.
  ParseError at_location(std::size_t line, std::size_t column) const;

 private:
  std::size_t offset_;
  std::vector<std::string> expected_;
  std::size_t line_ = 0;
  std::size_t column_ = 0;
};

class NotMonotone : public Error {
 public:
  NotMonotone(const std::string& message, double witness);
  double witness() const noexcept { return witness_; }

 private:
  double witness_;
};

class EmptyRule : public Error {
 public:
  explicit EmptyRule(const std::string& message);
};

class PositivityViolation : public Error {
 public:
  PositivityViolation(const std::string& bracket, double witness, double value);
  const std::string& bracket() const noexcept { return bracket_; }
  double witness() const noexcept { return witness_; }

 private:
  std::string bracket_;
  double witness_;
};

class ZeroA : public Error {
 public:
  ZeroA();
};

class ZeroAlpha : public Error {
 public:
  ZeroAlpha();
};

/// A result mark beyond the drawn stator scale. needed_mm is the position the
/// reading would need, available_mm the end of the scale it overshoots.
class OffScale : public Error {
 public:
  OffScale(double needed_mm, double available_mm, std::optional<std::size_t> step = std::nullopt);

  double needed_mm() const noexcept { return needed_mm_; }
  double available_mm() const noexcept { return available_mm_; }
  double overshoot_mm() const noexcept;
  std::optional<std::size_t> step() const noexcept { return step_; }

  OffScale at_step(std::size_t step) const;

 private:
  double needed_mm_;
  double available_mm_;
  std::optional<std::size_t> step_;
};

class ChainUnsupported : public Error {
 public:
  explicit ChainUnsupported(const std::string& message);
};

class DegenerateScale : public Error {
 public:
  explicit DegenerateScale(const std::string& message);
};

class UnknownEntry : public Error {
 public:
  UnknownEntry(const std::string& name, const std::vector<std::string>& valid);
};

}  // namespace sliderule
