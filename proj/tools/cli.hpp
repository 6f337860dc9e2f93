#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace aeltl::cli {

// Exit codes: 0 affirmative / success, 1 negative verdict, 2 usage or input error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace aeltl::cli
