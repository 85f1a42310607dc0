#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "bjg/core.hpp"

namespace bjg {

// Exit codes: 0 success, 2 bad input or violated precondition, 3 witness not found, 1 internal.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitPrecondition = 2;
inline constexpr int kExitWitnessNotFound = 3;

int exit_code_for(ErrorKind kind);

// args excludes the program name. The report goes to `out` unless --out is given.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bjg
