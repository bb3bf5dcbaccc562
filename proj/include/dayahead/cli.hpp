#pragma once

#include <iostream>
#include <string>
#include <vector>

namespace dayahead {

/// Runs one CLI invocation. `args` is the full argv including the program
/// name. Returns the process exit status: 0 on success (including infeasible
/// clearings, which are results), 1 on configuration/validation errors, 2 on
/// usage errors.
int run_command(const std::vector<std::string>& args, std::ostream& out = std::cout,
                std::ostream& err = std::cerr);

}  // namespace dayahead
