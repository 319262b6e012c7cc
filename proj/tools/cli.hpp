#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace chordext::cli {

/// Runs the command-line tool on `args` (without the program name). JSON goes
/// to `out`, human-readable summaries and errors to `err`.
///
/// Exit codes: 0 success, 1 negative result with certificate, 2 usage or
/// malformed input, 3 cap, numerical or assertion failure.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace chordext::cli
