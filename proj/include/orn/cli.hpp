#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace orn {

// Entry point of the ornate tool. args excludes the program name. Returns
// the process exit code: 0 success, 1 verification counterexample, 2 parse
// or elaboration error, 3 usage error. Never throws on user input.
int runCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace orn
