#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace profilekit::cli {

/// Runs one command line. Reports go to `out`, summaries and errors to `err`.
/// Exit codes: 0 success or PASS, 1 a FAIL verdict (or realizable=false), 2 errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace profilekit::cli
