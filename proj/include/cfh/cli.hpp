#pragma once

#include <iosfwd>

namespace cfh {

// Runs the command-line driver.  Returns the process exit code:
//   0  every requested check passed (or the command only printed results)
//   1  at least one check failed
//   2  usage error, unreadable file, or definition-file parse error
int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

}  // namespace cfh
