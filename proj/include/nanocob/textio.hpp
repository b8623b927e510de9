#pragma once

#include "nanocob/words.hpp"

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace nanocob {

// line and column are 1-based; column points at the offending token.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& message() const { return message_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string message_;
};

struct ParsedInput {
  AlphabetPtr alphabet;
  std::vector<Nanoword> words;
  std::vector<Nanophrase> phrases;
};

// Line grammar, '#' starts a comment:
//   alphabet: a b c
//   tau: a<->b c<->c
//   word: A B A B        (or compact ABAB)
//   phrase: A B | B A
//   proj: A=a B=b        (for the preceding word or phrase)
// With strict_tau, redeclaring a pair (a<->b b<->a) is an error.
ParsedInput parse_input(const std::string& text, bool strict_tau = false);
// Same grammar with an alphabet already fixed; alphabet/tau lines are
// rejected.
ParsedInput parse_input(const std::string& text, const AlphabetPtr& alphabet);

// "A B A B / A=a B=b" -> the two grammar lines.
std::string inline_word_text(const std::string& spec);

}  // namespace nanocob
