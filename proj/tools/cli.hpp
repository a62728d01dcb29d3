#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace afftree::cli {

/// Runs one command; args excludes the program name. Returns the exit status:
/// 0 success or true verdict, 1 false verdict, 2 input error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace afftree::cli
