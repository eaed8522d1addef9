#pragma once

#include <iosfwd>

namespace xv::cli {

// Exit codes.
constexpr int kOk = 0;
constexpr int kUsage = 2;  // parse, usage and configuration errors
constexpr int kTypeError = 3;
constexpr int kAmbiguous = 4;
constexpr int kRuntime = 5;

//   xv check [flags] FILE
//   xv run   [flags] FILE
//   xv solve [flags] (PRED | -e PRED)
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace xv::cli
