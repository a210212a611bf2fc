#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace kljn::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // configuration / domain / residual failure
inline constexpr int kExitUsage = 2;

/// Entry point of the `kljn` tool. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kljn::cli
