#pragma once

#include <iosfwd>

namespace dgs::cli {

/// Full command-line entry point, separated from main() so the test suite
/// can drive it with captured streams. Returns the process exit code:
/// 0 success, 1 usage or input error, 2 violated internal invariant.
int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err);

}  // namespace dgs::cli
