#pragma once

#include <ostream>

namespace h33 {

// Exit codes: 0 all selected checks pass or are skipped, 1 a check failed,
// 2 configuration, parse, or I/O error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace h33
