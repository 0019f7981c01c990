#ifndef CBRDIAG_TOOLS_COMMANDS_HPP
#define CBRDIAG_TOOLS_COMMANDS_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace cbrdiag::cli {

enum ExitStatus : int {
    kSuccess = 0,
    kValidationError = 1,
    kIoError = 2,
    kConfigurationError = 3,
};

/// Runs `cbrdiag <args...>` writing results to `out` and diagnostics to
/// `err`. `in` backs the "-" path. Returns the process exit status.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

} // namespace cbrdiag::cli

#endif
