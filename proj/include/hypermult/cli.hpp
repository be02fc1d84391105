#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hypermult::cli {

enum ExitCode : int { ok = 0, verification_failed = 1, schema_error = 2, domain_error = 3 };

/// Runs the command line (without the program name); reports go to `out`
/// unless --output names a file, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hypermult::cli
