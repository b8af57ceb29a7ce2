#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ghr::cli {

// Dispatches one CLI invocation. Exit codes: 0 success, 1 verification
// failure, 2 parameter error, 3 resource error, 4 internal invariant failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ghr::cli
