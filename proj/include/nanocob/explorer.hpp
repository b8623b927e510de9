#pragma once

#include "nanocob/moves.hpp"
#include "nanocob/pairings.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace nanocob {

// Every nanoword of half-length n over alpha, one per isomorphism class.
// Letters are numbered by first occurrence, so the output is already in
// canonical form. Refuses |alpha| > 3 or n > 6 unless allow_large is set.
std::vector<Nanoword> enumerate_nanowords(std::size_t half_length, const AlphabetPtr& alpha, bool allow_large = false);
void for_each_nanoword(std::size_t half_length, const AlphabetPtr& alpha, const std::function<void(const Nanoword&)>& visit);

struct InvariantRecord {
  Nanoword word;
  PiWord gamma;
  PiWord gamma_conj_class;
  UPoly u;
  std::vector<std::pair<std::string, Genus>> genera;  // keyed by PhiSpec id
  bool hyperbolic = false;
  PiElement r;
};

InvariantRecord invariant_record(const Nanoword& w, const std::vector<PhiSpec>& phis);
// Default battery: sign maps on the free orbits up to global negation.
InvariantRecord invariant_record(const Nanoword& w);

enum class SliceStatus { Slice, NotSlice, Unknown };

struct SliceVerdict {
  SliceStatus status = SliceStatus::Unknown;
  Metamorphosis witness;             // replays to the empty word when Slice
  std::string obstruction;           // first nonzero obstruction when NotSlice
  std::vector<std::string> all_obstructions;
  Caps caps;
  std::size_t nodes = 0;
};

// Obstructions are tried in the order gamma, pairing, u, sigma.
SliceVerdict slice_status(const Nanoword& w, const Caps& caps);
std::string format_verdict(const SliceVerdict& v);

enum class PairRelation { Distinct, Cobordant, Unknown };

struct ClassRow {
  InvariantRecord record;
  SliceVerdict verdict;
  std::size_t component = 0;  // classes with equal component were joined by BFS
};

struct Classification {
  std::vector<ClassRow> rows;
  // relation[i][j] for i, j indexing rows.
  std::vector<std::vector<PairRelation>> relation;
  Caps caps;
};

// Classes of half-length 0..n, bucketed by cobordism invariants and merged by
// BFS within buckets.
Classification classify(std::size_t half_length, const AlphabetPtr& alpha, const Caps& caps,
                        bool allow_large = false, unsigned jobs = 1);

// Runs f(i) for i in [0, n) on up to jobs threads.
void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& f);

// ----------------------------------------------------------- random inputs

using Rng = std::mt19937_64;

// Between 1 and max_free free orbits plus up to max_fixed fixed points.
AlphabetPtr random_alphabet(Rng& rng, int max_free, int max_fixed);
Nanoword random_word(Rng& rng, const AlphabetPtr& alpha, std::size_t half_length);
// An even phrase with a valid symmetry witness; word lengths are even and
// positive, total length 2*half_length.
Nanophrase random_even_symmetric_phrase(Rng& rng, const AlphabetPtr& alpha, std::size_t half_length,
                                        std::size_t words);

struct EmbeddedFactor {
  Nanoword word;
  Factor factor;
};
// Interleaves the phrase with a random word of the given half-length; the
// phrase occupies the returned factor's segments.
EmbeddedFactor embed_phrase(Rng& rng, const Nanophrase& v, const Nanoword& rest);

// Skew-symmetric pairing with random entries in [-bound, bound] per orbit.
AlphaPairing random_pairing(Rng& rng, const AlphabetPtr& alpha, std::size_t core, int bound);

// -------------------------------------------------------- bridge inequality

struct BridgeReport {
  std::size_t words = 0;
  std::size_t bridges = 0;
  std::size_t checks = 0;
  std::size_t violations = 0;
  int min_slack = 0;  // min over checks of 4*arches - twice_value
  std::vector<std::string> failures;
};

// For each sampled word and each bridge, checks arches >= sigma(p_w + p_x^-)/2
// for every sign map.
BridgeReport bridge_inequality_suite(Rng& rng, std::size_t samples, const AlphabetPtr& alpha, const Caps& caps,
                                     std::size_t max_half_length = 4);

}  // namespace nanocob
