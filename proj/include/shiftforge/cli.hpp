#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace shiftforge {

/// Runs the command line. Reports go to --out (or `out`), diagnostics to
/// `err`. Returns 0 on success, 2 on refused input or usage errors and 1
/// on internal failures.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv);

}  // namespace shiftforge
