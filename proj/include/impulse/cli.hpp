#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace impulse::cli {

/// Process exit codes.
enum ExitCode : int {
    kOk = 0,
    kInternalError = 1,
    kInputError = 2,   // missing, unreadable or undecodable input
    kOutputError = 3,  // output path not writable
    kInvalidArgs = 4,  // bad flag values, invalid detector/noise parameters, empty grids
};

/// Entry point of the `impulse` tool. Human-readable messages go to `err`;
/// `out` receives reports (machine-readable when --report is given).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Inclusive range "start:stop:step" or a comma-separated list. Throws
/// ConfigError naming `flag` on malformed or empty grids.
std::vector<double> parse_grid(const std::string& text, const std::string& flag);

}  // namespace impulse::cli
