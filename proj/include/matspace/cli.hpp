#pragma once

// Command-line front end: analyze, recover, census and verify over JSON files.

#include <iosfwd>
#include <string>
#include <vector>

namespace matspace {

/// Exit codes: 0 every check holds, 1 a hypothesis fails or a witness was
/// produced, 2 input or format error, 3 an Unknown verdict blocked the
/// answer, 4 budget or cap exceeded.
enum ExitCode : int { kExitOk = 0, kExitFails = 1, kExitInput = 2, kExitUnknown = 3, kExitLimit = 4 };

/// args excludes the program name. Reports go to out (or --output), diagnostics to err.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace matspace
