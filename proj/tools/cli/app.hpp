#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "job_config.hpp"

namespace phasespace::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitNumericGuard = 2;
inline constexpr int kExitVerificationFailed = 3;

/// Parses argv-style arguments (args[0] is the program name), runs the job
/// and returns the process exit code. Data goes to `out` unless --output
/// names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Executes an already-validated configuration.
int execute(const JobConfig& config, std::ostream& out, std::ostream& err);

} // namespace phasespace::cli
