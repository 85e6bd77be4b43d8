#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fuzzylex::cli {

// Runs the command line tool. `args` excludes the program name.
// Exit codes: 0 success, 1 invalid input files, 2 invalid arguments.
int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

// Cost formatting used on all CLI surfaces: up to 6 significant digits,
// trailing zeros trimmed, '.' decimal separator.
std::string format_number(double value);

}  // namespace fuzzylex::cli
