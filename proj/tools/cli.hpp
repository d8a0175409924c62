#pragma once

namespace phaseflow::cli {

/// Batch driver entry point: parses argv, runs the subcommand pipeline, and
/// returns the process exit code (0 success, 1 domain error, 2 usage error).
int run_command(int argc, const char* const* argv);

}  // namespace phaseflow::cli
