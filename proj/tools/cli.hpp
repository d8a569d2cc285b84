#pragma once

#include <iosfwd>

namespace stockseq::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kInternal = 1;
inline constexpr int kBadInput = 2;
inline constexpr int kOracleCap = 3;
inline constexpr int kUsage = 64;

/// Full command-line front end; `argv[0]` is the program name. Output that
/// would go to stdout/stderr goes to `out`/`err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace stockseq::cli
