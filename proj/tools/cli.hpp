#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace pgt::cli {

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kInvalid = 1;   // parse, validation, oracle mismatch
inline constexpr int kTooLarge = 2;  // instantiation limit
inline constexpr int kRuntime = 3;   // undefined execution, other failures

/// Runs one invocation; args exclude the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace pgt::cli
