#pragma once

#include <iosfwd>

namespace ned::cli {

// Exit codes: 0 success, 1 usage error, 2 data error.
inline constexpr int kOk = 0;
inline constexpr int kUsage = 1;
inline constexpr int kData = 2;

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ned::cli
