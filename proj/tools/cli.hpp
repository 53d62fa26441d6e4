#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "settings.hpp"

namespace texcurve::cli {

/// Process exit codes shared by every subcommand.
enum ExitCode : int { kSuccess = 0, kFatal = 1, kPartial = 2 };

/// Runs the `texcurve` command line. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        EnvLookup env = process_env());

}  // namespace texcurve::cli
