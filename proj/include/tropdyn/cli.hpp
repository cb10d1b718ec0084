#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tropdyn {

/// Command-line front end. `args[0]` is the program name. Returns 0 on
/// success, 1 on domain errors and 2 on usage errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tropdyn
