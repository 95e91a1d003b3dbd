#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace locgh {

// Runs one CLI invocation. Returns the process exit code: 0 success,
// 2 validation/parse failure, 3 computation-domain error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace locgh
