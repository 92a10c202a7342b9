#pragma once

// Batch front end behind tools/charfock. Reports go to `out` (or --output),
// diagnostics to `err`.

#include <ostream>
#include <string>
#include <vector>

namespace charfock::cli {

enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,
  kInvalidInput = 2,
  kUnknownVerdict = 3,
};

/// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace charfock::cli
