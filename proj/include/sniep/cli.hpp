#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sniep {

// Exit codes of the command-line tool.
enum ExitCode : int { kMember = 0, kNonMember = 1, kInconclusive = 2, kInputError = 3 };

// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sniep
