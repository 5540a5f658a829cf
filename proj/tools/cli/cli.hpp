#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "instance.hpp"
#include "ncr/matspace.hpp"

namespace ncr::cli {

inline constexpr const char* kVersion = "1.0.0";

enum ExitCode : int {
  kOk = 0,
  kInternal = 1,
  kNotSemistable = 2,
  kValidation = 3,
  kProbabilistic = 4,
  kOracleInfeasible = 5,
};

struct Flags {
  std::uint64_t seed = 0;
  std::size_t retries = 8;
  Mode mode = Mode::randomized;
  std::optional<std::size_t> blowup_d;
  std::string algo = "reduced";              // reduced | augmented | both
  std::string orientation = "target-fixed";  // target-fixed | source-fixed
  bool timing = false;                       // off by default so reports stay bit-identical
};

struct Outcome {
  json report;
  int exit_code = kOk;
};

// command: ncrk | witness | semistable | nchom | ncext | oracle.
Outcome run_command(const std::string& command, const Instance& inst, const Flags& flags);

// Re-checks every certificate in a report against the instance.
Outcome verify_report(const json& report, const Instance& inst);

// Error payload written to stderr, and the matching exit code.
Outcome error_outcome(const std::exception& e);

// Full command line entry point; reports go to out, warnings and errors to err.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ncr::cli
