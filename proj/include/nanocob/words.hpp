#pragma once

#include "nanocob/algebra.hpp"

#include <optional>
#include <string>
#include <vector>

namespace nanocob {

// A word in which each letter occurs exactly twice. Letters are dense ids
// 0..m-1; projection[id] is a symbol of the ground alphabet; names is a
// printing side table.
class Nanoword {
 public:
  Nanoword() = default;
  Nanoword(AlphabetPtr ground, std::vector<int> sequence, std::vector<int> projection,
           std::vector<std::string> names = {});

  const InvolutiveAlphabet& ground() const { return *ground_; }
  const AlphabetPtr& ground_ptr() const { return ground_; }
  const std::vector<int>& sequence() const { return sequence_; }
  const std::vector<int>& projection() const { return projection_; }
  const std::vector<std::string>& names() const { return names_; }

  std::size_t length() const { return sequence_.size(); }
  std::size_t letter_count() const { return projection_.size(); }
  bool empty() const { return sequence_.empty(); }
  int at(std::size_t i) const { return sequence_[i]; }
  int projection(int letter) const { return projection_.at(letter); }
  const std::string& name(int letter) const { return names_.at(letter); }
  int letter_id(const std::string& name) const;  // throws on unknown
  // Positions of the two entries, first < second.
  std::pair<std::size_t, std::size_t> positions(int letter) const { return positions_.at(letter); }

  std::string to_string() const;          // "A B A B"
  std::string projection_string() const;  // "A=a B=b"

  bool operator==(const Nanoword& other) const;

 private:
  AlphabetPtr ground_;
  std::vector<int> sequence_;
  std::vector<int> projection_;
  std::vector<std::string> names_;
  std::vector<std::pair<std::size_t, std::size_t>> positions_;
};

// Sequence of words whose concatenation is a nanoword.
class Nanophrase {
 public:
  Nanophrase() = default;
  Nanophrase(AlphabetPtr ground, std::vector<std::vector<int>> words, std::vector<int> projection,
             std::vector<std::string> names = {});

  const InvolutiveAlphabet& ground() const { return *ground_; }
  const AlphabetPtr& ground_ptr() const { return ground_; }
  const std::vector<std::vector<int>>& words() const { return words_; }
  const std::vector<int>& projection() const { return projection_; }
  const std::vector<std::string>& names() const { return names_; }
  std::size_t letter_count() const { return projection_.size(); }
  std::size_t word_count() const { return words_.size(); }
  // Index of the word holding each entry of the letter.
  std::pair<std::size_t, std::size_t> word_of(int letter) const { return word_of_.at(letter); }

  Nanoword concatenation() const;
  std::string to_string() const;  // "A B | B A"

 private:
  AlphabetPtr ground_;
  std::vector<std::vector<int>> words_;
  std::vector<int> projection_;
  std::vector<std::string> names_;
  std::vector<std::pair<std::size_t, std::size_t>> word_of_;
};

struct SymmetryWitness {
  std::vector<int> iota;     // involution on letters
  std::vector<int> epsilon;  // 0 or 1 per letter
};

Nanoword canonical_form(const Nanoword& w);
// Compact byte encoding of the canonical form; equal iff isomorphic.
std::string canonical_key(const Nanoword& w);
bool isomorphic(const Nanoword& u, const Nanoword& v);

Nanoword opposite(const Nanoword& w);
Nanoword concatenate(const Nanoword& w1, const Nanoword& w2);

// The involution iota is forced by positions: entry i of w_r faces entry
// n_r+1-i of w_r. Returns it when it is a well-defined letter map satisfying
// |iota(A)| = tau^eps(A) |A|.
std::optional<SymmetryWitness> symmetry_witness(const Nanophrase& v);
std::optional<SymmetryWitness> symmetry_witness(const Nanoword& w);
bool is_even(const Nanophrase& v);
int epsilon(const Nanophrase& v, int letter);

// AxAy -> x A' y A' with |A'| = tau|A|. The moved letter keeps its slot id
// and gains a prime in its name.
Nanoword circular_shift(const Nanoword& w);
Nanoword inverse_circular_shift(const Nanoword& w);

// f maps symbols of w's ground alphabet to symbols of target and must
// commute with the involutions.
Nanoword push_forward(const Nanoword& w, AlphabetPtr target, const std::vector<int>& f);
// Keeps letters projecting into beta (a tau-invariant symbol set); the
// result stays over the same ground alphabet.
Nanoword pull_back(const Nanoword& w, const std::vector<int>& beta);

// Deletes a set of letters (given by membership flags) and renumbers the
// remaining ones densely in order of their ids.
Nanoword delete_letters(const Nanoword& w, const std::vector<bool>& doomed);

// gamma(w) = g_1 ... g_n with g_i = z_{|w(i)|} at a first entry and its
// inverse at a second entry.
PiWord gamma_of(const Nanoword& w);

// Convenience for tests and examples: letters are single characters or
// space-separated names; proj maps each letter name to a symbol name.
Nanoword make_word(AlphabetPtr ground, const std::string& letters,
                   const std::vector<std::pair<std::string, std::string>>& proj);
Nanophrase make_phrase(AlphabetPtr ground, const std::string& words,
                       const std::vector<std::pair<std::string, std::string>>& proj);

}  // namespace nanocob
