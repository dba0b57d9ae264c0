#pragma once

#include <ostream>

namespace qwalk::cli {

/// Exit codes: 0 ok, 1 a verify check failed, 2 usage error, 3 domain error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qwalk::cli
