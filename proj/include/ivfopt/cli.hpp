#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ivfopt::cli {

/// Runs one command line (without the program name). Reports go to `out`,
/// messages to `err`. Returns 0 when the checked condition holds, 1 when it
/// fails, 2 on usage or validation errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ivfopt::cli
