#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dgforge {

/**
 * The dgforge command line without the program name. Reports go to out,
 * diagnostics and usage to err. Returns the exit code: 0 yes or success,
 * 1 certified no, 2 inconclusive, 3 input error.
 */
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dgforge
