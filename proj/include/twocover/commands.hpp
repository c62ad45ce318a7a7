#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace twocover::cli {

// Runs one CLI invocation.  Exit codes: 0 success, 1 input or
// validation error, 2 internal invariant violation.
int run_command(const std::vector<std::string>& args, std::ostream& out,
                std::ostream& err);

}  // namespace twocover::cli
