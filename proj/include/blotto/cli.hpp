#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace blotto {

// Entry point of the `blotto` tool. Exit codes: 0 ok, 1 validation-only
// failures, 2 fatal (one JSON line on `err`).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, char** argv);

}  // namespace blotto
