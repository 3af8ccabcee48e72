#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lcentropy {

/// Entry point behind the lcentropy binary.  Exit codes: 0 success, 1
/// verification/certification failure, 2 usage or input error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lcentropy
