#include "sliderule/format.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>

namespace sliderule {

namespace {

std::string to_chars_general(double value, int precision) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, precision);
  return std::string(buf, res.ptr);
}

std::string to_chars_shortest(double value) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

int significant_digits(const std::string& text) {
  int digits = 0;
  bool leading = true;
  for (char c : text) {
    if (c == 'e' || c == 'E') break;
    if (c < '0' || c > '9') continue;
    if (leading && c == '0') continue;
    leading = false;
    ++digits;
  }
  return digits;
}

}  // namespace

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (value == 0.0) return "0";
  std::string shortest = to_chars_shortest(value);
  if (significant_digits(shortest) <= 9) return shortest;
  return to_chars_general(value, 9);
}

std::string format_fixed(double value, int decimals) {
  if (!std::isfinite(value)) return format_number(value);
  const double rounded = round_to(value, decimals);
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, rounded == 0.0 ? 0.0 : rounded);
  return buf;
}

std::string format_label(double value, double rel_tol) {
  if (value == 0.0) return "0";
  if (!std::isfinite(value)) return format_number(value);
  const double mag = std::abs(value);
  const bool plain = mag >= 1e-4 && mag < 1e7;
  for (int precision = 1; precision <= 17; ++precision) {
    char buf[64];
    if (plain) {
      // decimals needed at this number of significant digits
      const int exponent = static_cast<int>(std::floor(std::log10(mag)));
      const int decimals = std::max(0, precision - 1 - exponent);
      std::snprintf(buf, sizeof(buf), "%.*f", decimals, value);
    } else {
      std::snprintf(buf, sizeof(buf), "%.*e", precision - 1, value);
    }
    const double parsed = std::strtod(buf, nullptr);
    if (std::abs(parsed - value) <= rel_tol * mag) {
      std::string out(buf);
      if (!plain) {
        // 1e+06 -> 1e6, 2.5e-05 -> 2.5e-5
        auto e = out.find('e');
        std::string mantissa = out.substr(0, e);
        int exp = std::atoi(out.c_str() + e + 1);
        out = mantissa + "e" + std::to_string(exp);
      }
      return out;
    }
  }
  return to_chars_shortest(value);
}

double round_to(double value, int decimals) {
  const double scale = std::pow(10.0, decimals);
  const double r = std::round(value * scale) / scale;
  return r == 0.0 ? 0.0 : r;
}

}  // namespace sliderule
