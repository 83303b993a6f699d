#pragma once

#include <ostream>

namespace formaltrip::cli {

/// Exit codes: 0 success (verify: Equivalent), 1 failure (verify: NotEquivalent),
/// 2 verify Unknown, 3 invalid expression, 64 usage error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace formaltrip::cli
