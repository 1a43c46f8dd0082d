// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace amgm::cli {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitInternal = 3;

// Full command dispatch: args excludes the program name.  Streams are
// injected so tests can run commands in-process.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace amgm::cli
