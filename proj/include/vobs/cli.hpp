#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace vobs {
namespace cli {

// Runs the command line given args (without the program name) and returns
// the process exit code: 0 success, 2 input error, 3 internal error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cli
}  // namespace vobs
