#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bogomps::cli {

enum ExitCode { kOk = 0, kValidation = 2, kNumerical = 3, kUsage = 4 };

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bogomps::cli
