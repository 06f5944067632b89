#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cechctx {

enum ExitCode : int {
    exit_ok = 0,
    exit_usage = 1,
    exit_invalid_model = 2,
    exit_verification_failure = 3,
};

/// Runs one command. `args` excludes the program name. Reports go to `out`,
/// diagnostics to `err`.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cechctx
