#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tritile {

/// Runs the command line `args` (args[0] is the program name).
/// Returns 0 when every requested check passes, 1 when violations are found
/// and 2 on usage or IO errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace tritile
