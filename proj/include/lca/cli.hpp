#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lca::cli {

constexpr int kSchemaVersion = 1;

enum Exit { kOk = 0, kFailure = 1, kUsage = 2 };

/// Runs one command line (args[0] is the program name). Reports go to out,
/// diagnostics to err. Returns 0 on success, 1 on a mathematical failure or
/// mismatch and 2 on usage, parse or configuration errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Worker count for sweeps: LCA_THREADS when set to a positive integer,
/// otherwise the hardware concurrency.
unsigned default_threads();

}  // namespace lca::cli
