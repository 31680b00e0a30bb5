#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace slowsetnim::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitViolation = 2;

// args[0] is the program name. Reads human moves for `play` from `in`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, std::istream& in);

}  // namespace slowsetnim::cli
