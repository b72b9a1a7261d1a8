#pragma once

#include <iostream>
#include <string>
#include <vector>

namespace tilekit {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitDomainError = 1;
inline constexpr int kExitUsage = 2;

// args excludes the program name. `in` backs `--spec -`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, std::istream& in = std::cin);

}  // namespace tilekit
