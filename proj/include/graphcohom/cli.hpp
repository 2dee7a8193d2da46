#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gcoh {

/// Entry point of the command-line tool. args[0] is the program name.
/// Exit codes: 0 success, 1 verification failure, 2 input error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gcoh
