#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sliderule::cli {

enum ExitCode : int {
  kOk = 0,
  kInputError = 1,  // I/O or parse
  kValidation = 2,
  kOffScale = 3,
  kUsage = 64,
};

/// Runs one command line (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sliderule::cli
