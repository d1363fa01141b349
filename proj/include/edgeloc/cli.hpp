#pragma once

#include <string>
#include <vector>

namespace edgeloc::cli {

// Runs one command (args exclude the program name). Returns the process
// exit code: 0 success, 1 configuration/validation error, 2 pipeline
// rejection (no detection, fit rmse, ambiguity, ...).
int run(std::vector<std::string> args);

} // namespace edgeloc::cli
