// Command-line front end: sweep, density, trajectory, verify.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dtco::cli {

enum ExitCode : int {
    kOk = 0,
    kVerificationFailed = 1,
    kUsage = 2,
    kIoError = 3,
    kUnphysical = 4,
};

/// Inclusive axis start:stop:count. A bare number is a one-point axis and
/// a comma list is taken verbatim. Throws std::invalid_argument on count < 1,
/// stop < start, a count-1 axis with stop != start, or an empty list.
std::vector<double> parse_axis(const std::string& text);

/// Runs one command. args excludes the program name. Table output goes to
/// `out` unless --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace dtco::cli
