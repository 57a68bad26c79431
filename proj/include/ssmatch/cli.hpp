#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ssmatch {

enum ExitCode : int {
  kExitOk = 0,
  kExitAuditFailure = 1,
  kExitIncomplete = 2,
  kExitUsage = 64,
};

/// Entry point of the ssmatch tool; args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace ssmatch
