#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace duel::cli {

// Exit contract: 0 success (verify: all checks passed), 1 verification
// failure, 2 usage error, 3 numeric failure.
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumeric = 3;

// Runs one command (args exclude the program name). Every command is a pure
// function of its flags, so repeated invocations produce byte-identical
// output.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace duel::cli
