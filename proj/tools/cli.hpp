// Command-line front end. run() parses argv, executes one subcommand and
// writes a JSON report; the exit code is 0 when every residual is below its
// tolerance, 1 on a residual failure and 2 on bad input.
#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ell::cli {

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace ell::cli
