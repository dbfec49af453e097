#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sigscan::cli {

/// Runs one subcommand; args[0] is the program name. Returns the exit status:
/// 0 on success, 1 on argument errors, 2 on malformed input files.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sigscan::cli
