#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace vizsim::cli {

enum ExitCode : int {
    ok = 0,
    domain_failure = 1,
    input_error = 2,
};

/// Runs `vizsim <args...>`; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace vizsim::cli
