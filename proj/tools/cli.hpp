#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pfm::cli {

// Exit codes: 0 every check passed, 1 a mathematical check failed, 2 the
// input was malformed or refused by a guard.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pfm::cli
