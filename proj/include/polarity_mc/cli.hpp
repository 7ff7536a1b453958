#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace polarity_mc {

/// Runs one command line (without the program name). Returns 0 for a true
/// answer or success, 1 for a false answer or a discrepancy, 2 for errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace polarity_mc
