#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace dcongr::cli {

// Exit codes: 0 ok, 2 parse, 3 precondition, 4 precision, 5 horizon.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dcongr::cli
