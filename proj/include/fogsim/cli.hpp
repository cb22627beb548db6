#pragma once

#include <string>
#include <vector>

namespace fogsim {

/// Runs one CLI invocation (subcommands: run, stats, export-graph,
/// validate). Returns the process exit code: 0 success, 1 validation error,
/// 2 runtime/IO error.
int run_cli(const std::vector<std::string>& args);

}  // namespace fogsim
