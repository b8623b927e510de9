#pragma once

#include "nanocob/moves.hpp"

#include <iosfwd>
#include <string>

namespace nanocob {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;  // a verification or requested check failed
inline constexpr int kExitInput = 2;   // unreadable or invalid input

// "k=4,letters=6,bfs=12,nodes=2000,s=2"; unspecified keys keep defaults.
// Throws std::invalid_argument on unknown keys or non-positive values.
Caps parse_caps(const std::string& text);

// FNV-1a over the pretty form; used as a stable u fingerprint in tables.
std::string fingerprint(const std::string& text);

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace nanocob
