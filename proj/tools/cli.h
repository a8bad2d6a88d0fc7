#ifndef QCONVEX_TOOLS_CLI_H_
#define QCONVEX_TOOLS_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace qconvex::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kInvalidInput = 1;
inline constexpr int kNumericalFailure = 2;

// Runs the command line `args` (without the program name). Reports go to
// `out` unless --out names a file; diagnostics go to `err`.
int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace qconvex::cli

#endif  // QCONVEX_TOOLS_CLI_H_
