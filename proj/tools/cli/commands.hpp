#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace permsim::cli {

enum ExitCode : int {
  kOk = 0,
  kInvalid = 1,   // verification failed
  kUsage = 2,     // bad flags or unreadable/malformed input
  kInternal = 3,  // bug or unexpected failure
};

/// Environment variable consulted for the default --seed.
inline constexpr const char* kSeedEnv = "PERMSIM_SEED";

/// Entry point shared by the binary and the tests. args excludes argv[0].
/// `in` stands in for standard input wherever a file argument is "-".
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace permsim::cli
