#pragma once

#include <string>
#include <vector>

namespace wnrank {

/// Runs the command line interface. Returns the process exit code:
/// for `test`, 0 = null not rejected, 1 = rejected, 2 = error;
/// for `simulate`, 0 = success, 2 = error.
int run_cli(const std::vector<std::string>& args);
int run_cli(int argc, char** argv);

}  // namespace wnrank
