#pragma once

#include <iosfwd>

namespace perisched::tools {

enum ExitCode : int { exit_ok = 0, exit_usage = 1, exit_infeasible = 2, exit_internal = 3 };

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace perisched::tools
