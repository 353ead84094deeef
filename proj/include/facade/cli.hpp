#pragma once

#include <ostream>

#include "facade/error.hpp"

namespace facade {

/// Bad invocation or unusable input set; maps to exit code 2.
class UsageError : public Error {
 public:
  using Error::Error;
};

enum ExitCode : int { kExitOk = 0, kExitFailure = 1, kExitUsage = 2 };

/// Entry point of the `facade` tool: train, match, evaluate, suggest-n,
/// synth-models. Results go to `out`, diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace facade
