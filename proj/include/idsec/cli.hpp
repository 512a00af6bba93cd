#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace idsec {

/// Command-line entry point; the idsec binary forwards argv here. args
/// excludes the program name. Returns the process exit code: 0 on success,
/// 1 on input errors (bad flags, malformed files, invalid parameters),
/// 2 on solver failures.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace idsec
