#pragma once

#include <iosfwd>

namespace mmwsim {

// Entry point for the mmwsim tool: simulate | sweep | trace | validate.
// Returns the process exit code; diagnostics go to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mmwsim
