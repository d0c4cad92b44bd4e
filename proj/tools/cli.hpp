#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace oinfty::cli {

/// Runs one command line (without the program name) and returns the exit
/// code: 0 success, 2 invalid input, 3 size or search limit, 4 internal
/// invariant broken.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace oinfty::cli
