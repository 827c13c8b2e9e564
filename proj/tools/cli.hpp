#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ose::cli {

/// Exit codes shared by every subcommand.
enum Exit : int { kOk = 0, kCheckFailed = 1, kUsage = 2 };

/// Entry point behind `ose`; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// OSE_THREADS, or 0 (auto) when unset or unparsable.
unsigned threads_from_env();

}  // namespace ose::cli
