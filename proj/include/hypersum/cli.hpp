#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace hypersum {

/// Runs the command line tool. args[0] is the program name. Results go to out,
/// trace lines and "*****" messages to err. Returns 0 on success, 1 when an
/// algorithm reports a documented failure and 2 on usage or syntax errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hypersum
