#pragma once

#include <iosfwd>

namespace wxray {

/// Entry point of the wxray command-line tool. Returns the process exit status:
/// 0 success, 1 failed verification or runtime error, 2 usage error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace wxray
