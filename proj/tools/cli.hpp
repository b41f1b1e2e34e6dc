#pragma once

#include <iosfwd>

namespace spinnet::cli {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode { kOk = 0, kValidation = 2, kSolver = 3, kIo = 4 };

// Runs one command. Reports go to `out` (or --output), errors to `err` as JSON.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace spinnet::cli
