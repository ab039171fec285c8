#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace tubular::cli {

// Exit codes: 0 success, 1 a check failed, 2 bad input.
inline constexpr int kOk = 0;
inline constexpr int kCheckFailed = 1;
inline constexpr int kInputError = 2;

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tubular::cli
