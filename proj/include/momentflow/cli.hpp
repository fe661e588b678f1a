#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace momentflow::cli {

/// Runs one CLI invocation. `args` excludes the program name.
/// Returns 0 on success, 1 on a computation error, 2 on a usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace momentflow::cli
