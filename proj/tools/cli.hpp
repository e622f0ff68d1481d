#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace contour {

/// Runs one command line (without the program name). Exit codes: 0 success,
/// valid, feasible or pass; 1 invalid, infeasible or fail; 2 usage or I/O error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace contour
