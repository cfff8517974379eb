#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace stonevn {

// Command-line front end. `args` is argv without the program name. Writes
// results to `out` and diagnostics to `err`. Returns the process exit code:
// 0 on success, 1 when a verification ran and failed, 2 on usage or input
// errors. Output is byte-deterministic for fixed arguments, files, and seed.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace stonevn
