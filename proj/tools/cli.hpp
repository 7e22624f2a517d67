#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tauzak::cli {

enum ExitCode : int {
    exit_success = 0,
    exit_verification_failure = 1,
    exit_input_error = 2,
};

/// Runs one `tauzak` invocation. `args` excludes the program name.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace tauzak::cli
