#ifndef RECURBOUND_CLI_HPP
#define RECURBOUND_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace recurbound::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitBoundViolated = 2;

/// Runs `recur-bound` with the given arguments (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace recurbound::cli

#endif  // RECURBOUND_CLI_HPP
