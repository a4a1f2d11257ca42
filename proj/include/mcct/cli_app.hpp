#pragma once

#include <iosfwd>

namespace mcct {

// Full command-line surface (analyze / bound / mgf / simulate / verify /
// construct). Returns the process exit code: 0 on success, 1 on validation or
// check failure, 2 when --strict flags a vacuous bound.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mcct
