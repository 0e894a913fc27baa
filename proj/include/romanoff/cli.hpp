#pragma once

#include <iosfwd>

namespace romanoff::cli {

/// Runs one CLI invocation. Reports go to `out` as JSON (or CSV for
/// `sieve --out csv`); progress and usage diagnostics go to `err`.
/// Returns the process exit code: 0 pass, 1 fail or runtime error,
/// 2 usage error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace romanoff::cli
