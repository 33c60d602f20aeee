#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace adiclab::cli {

// Exit codes: 0 success, 1 a checked property failed, 2 usage error,
// 3 resource cap hit.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace adiclab::cli
