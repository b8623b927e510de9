#pragma once

#include "nanocob/textio.hpp"

#include <string>

namespace testutil {

// a a~ b b~ c c~, three free orbits.
inline nanocob::AlphabetPtr free3() {
  return nanocob::parse_input("alphabet: a a~ b b~ c c~\ntau: a<->a~ b<->b~ c<->c~\n").alphabet;
}

inline nanocob::AlphabetPtr free2() {
  return nanocob::parse_input("alphabet: a a~ b b~\ntau: a<->a~ b<->b~\n").alphabet;
}

// One free orbit {a, a~} and one fixed point t.
inline nanocob::AlphabetPtr mixed() {
  return nanocob::parse_input("alphabet: a a~ t\ntau: a<->a~ t<->t\n").alphabet;
}

// word("A B A B / A=a B=b")
inline nanocob::Nanoword word(const nanocob::AlphabetPtr& alpha, const std::string& spec) {
  return nanocob::parse_input(nanocob::inline_word_text(spec), alpha).words.at(0);
}

}  // namespace testutil
