#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hcmc {

/// Command-line entry point, separated from main() so tests can drive it
/// with captured streams. Returns the process exit code: 0 success,
/// 2 option errors, 3 domain errors, 4 non-convergence.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace hcmc
