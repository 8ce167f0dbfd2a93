#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bowlab {

/// Runs the bowlab command line. Exit codes: 0 success, 1 domain error,
/// 2 usage error, 3 conjecture falsification. Domain errors also print a
/// machine-readable JSON object on the error stream.
int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bowlab
