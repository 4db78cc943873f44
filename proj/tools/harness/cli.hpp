#pragma once

#include <ostream>

namespace tricycle::harness {

/// Full command-line entry point. Table output goes to `out` unless --out is
/// given; messages go to `err`. Returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tricycle::harness
