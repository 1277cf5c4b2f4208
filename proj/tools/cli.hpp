#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace facto::cli {

/// Runs one command line (without the program name). Exit codes: 0 success,
/// 1 a verification sweep found a disagreement, 2 usage, parse, validation or domain error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace facto::cli
