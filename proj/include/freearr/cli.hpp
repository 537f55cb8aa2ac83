#ifndef FREEARR_CLI_HPP
#define FREEARR_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace freearr::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitInvariant = 2;

/// Runs one command; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace freearr::cli

#endif
