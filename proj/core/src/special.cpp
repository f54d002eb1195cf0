#include "sliderule/special.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "sliderule/errors.hpp"
#include "sliderule/format.hpp"

namespace sliderule {

namespace {

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczosCoefficients = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7,
};

double lanczos_log_gamma(double x) {
  // x >= 0.5
  const double shifted = x - 1.0;
  double series = kLanczosCoefficients[0];
  for (std::size_t i = 1; i < kLanczosCoefficients.size(); ++i) {
    series += kLanczosCoefficients[i] / (shifted + static_cast<double>(i));
  }
  const double t = shifted + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * std::numbers::pi) + (shifted + 0.5) * std::log(t) - t +
         std::log(series);
}

}  // namespace

double log_gamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw EvalError("loggamma is only defined here for positive finite arguments, got " +
                        format_number(x),
                    x);
  }
  if (x < 0.5) {
    // Γ(x)Γ(1-x) = π / sin(πx), and sin(πx) > 0 on (0, 0.5)
    return std::log(std::numbers::pi / std::sin(std::numbers::pi * x)) - lanczos_log_gamma(1.0 - x);
  }
  return lanczos_log_gamma(x);
}

}  // namespace sliderule
