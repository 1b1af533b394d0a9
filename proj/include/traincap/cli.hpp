#pragma once

namespace traincap {

/// Full command-line entry point: subcommands plan / scale / ps /
/// catalog-validate. Returns the process exit code: 0 success, 2 planner
/// infeasibility, 1 input or I/O error.
int run_cli(int argc, const char* const* argv);

}  // namespace traincap
