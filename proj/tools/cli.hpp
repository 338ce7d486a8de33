#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace darboux::cli {

enum Exit { Success = 0, MathFailure = 1, InputError = 2 };

// Runs one command line (without the program name).  Results go to out, or
// to the --out file; diagnostics go to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace darboux::cli
