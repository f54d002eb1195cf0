#pragma once

#include <string>

namespace sliderule {

/// Shortest round-trip decimal, trimmed to 9 significant digits. Used for all
/// user-facing numbers (CLI output, CSV, diagnostics).
std::string format_number(double value);

/// Fixed-point with exactly `decimals` places; never prints "-0.000".
std::string format_fixed(double value, int decimals);

/// Shortest decimal that identifies `value` to within rel_tol (plain notation
/// for moderate magnitudes, scientific otherwise). Used for tick labels.
std::string format_label(double value, double rel_tol = 1e-9);

/// Rounds to a fixed number of decimal places.
double round_to(double value, int decimals);

}  // namespace sliderule
