#ifndef DNML_CLI_COMMANDS_HPP
#define DNML_CLI_COMMANDS_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace dnml::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitFailure = 3;

// Entry point of the dnml tool. args excludes the program name. Tables go to
// `out` (or --output), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dnml::cli

#endif  // DNML_CLI_COMMANDS_HPP
