#pragma once

#include <string>
#include <vector>

namespace qneat::cli {

// Exit codes by failure category.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitIo = 3;
inline constexpr int kExitUnsupportedSize = 4;

// Full CLI entry point; args excludes the program name.
int run(const std::vector<std::string>& args);

int run(int argc, const char* const* argv);

}  // namespace qneat::cli
