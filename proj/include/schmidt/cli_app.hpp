#pragma once

#include <string>
#include <vector>

namespace schmidt {

// Runs one schmidt-osc command; args exclude the program name.
// Exit codes: 0 success, 2 usage/validation, 3 I/O, 4 numerical consistency.
int run_cli(std::vector<std::string> args);

}  // namespace schmidt
