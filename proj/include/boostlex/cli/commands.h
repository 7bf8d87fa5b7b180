#ifndef BOOSTLEX_CLI_COMMANDS_H_
#define BOOSTLEX_CLI_COMMANDS_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace boostlex::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

// `args` excludes the program name. Primary output goes to `out`, the
// resolved config echo and errors to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace boostlex::cli

#endif  // BOOSTLEX_CLI_COMMANDS_H_
