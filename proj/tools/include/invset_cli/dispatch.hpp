#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "invset_cli/record.hpp"

namespace invset::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitRefusal = 2,    // InconsistentHistory or WrongSampleSpace
  kExitInvariant = 3,  // a selftest check or internal invariant failed
};

/// Name of the environment variable that supplies the default seed.
inline constexpr const char* kSeedEnvVar = "INVSET_SEED";

struct Environment {
  std::optional<std::string> default_seed;  // value of INVSET_SEED, if set
};

std::string version();

/// Runs one invocation. `args` excludes the program name.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
             const Environment& env = {});

/// The embedded invariant suite behind `selftest`; one record per check,
/// flagged PASS or FAIL.
std::vector<RunRecord> run_selftest(std::uint64_t seed, unsigned order);

}  // namespace invset::cli
