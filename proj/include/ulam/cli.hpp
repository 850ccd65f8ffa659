#pragma once

#include <iosfwd>

namespace ulam {

/// Command-line front end. Returns the process exit code: 0 yes/success,
/// 1 no/failed verification, 2 usage or input error. Output goes to the
/// given streams so tests can capture it.
int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

}  // namespace ulam
