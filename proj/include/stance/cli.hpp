#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace stance::cli {

// "a..b:step" (inclusive range) or a comma-separated list.
std::vector<double> parse_values(std::string_view spec);

// Runs one subcommand. Returns 0 on success, 1 on a runtime failure (one-line
// diagnostic on stderr) and 2 on a usage error. args[0] is the program name.
int run(const std::vector<std::string>& args);

}  // namespace stance::cli
