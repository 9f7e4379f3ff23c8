#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ecgw::cli {

// Exit status: 0 success, 1 a property failed, 2 usage or input error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ecgw::cli
