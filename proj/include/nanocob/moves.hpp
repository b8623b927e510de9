#pragma once

#include "nanocob/words.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace nanocob {

// Half-open range of positions [begin, end) in a word.
struct Segment {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::size_t size() const { return end - begin; }
  bool operator==(const Segment&) const = default;
};

// Letters B of w together with the segments v_1..v_k that hold exactly their
// entries. Adjacent segments are allowed.
struct Factor {
  std::vector<int> letters;  // sorted ids of w
  std::vector<Segment> segments;
  bool operator==(const Factor&) const = default;
};

// Validates the factor against w and returns its nanophrase; letter i of the
// phrase is letters[i] of w. Throws std::invalid_argument.
Nanophrase factor_phrase(const Nanoword& w, const Factor& f);
// Builds the factor whose segments are the given ranges; letters are read off.
Factor factor_from_segments(const Nanoword& w, std::vector<Segment> segments);
bool is_even_symmetric(const Nanoword& w, const Factor& f);

struct Bridge {
  Factor factor;
  std::vector<int> kappa;  // involution on segment indices, 0-based
  SymmetryWitness witness;  // indexed by phrase letters
  int arches = 0;
};

struct H2Site {
  std::size_t i = 0;  // AB at i, i+1
  std::size_t j = 0;  // BA at j, j+1
  bool operator==(const H2Site&) const = default;
};

struct H3Site {
  std::size_t i = 0;
  std::size_t j = 0;
  std::size_t k = 0;
  bool operator==(const H3Site&) const = default;
};

std::vector<std::size_t> find_h1_sites(const Nanoword& w);
Nanoword apply_h1(const Nanoword& w, std::size_t site);
std::vector<H2Site> find_h2_sites(const Nanoword& w);
Nanoword apply_h2(const Nanoword& w, const H2Site& site);
// Forward sites match xAByACzBCt, inverse sites match xBAyCAzCBt; in both
// cases |A|=|B|=|C| and the move swaps the three adjacent pairs.
std::vector<H3Site> find_h3_sites(const Nanoword& w, bool inverse = false);
Nanoword apply_h3(const Nanoword& w, const H3Site& site, bool inverse = false);

std::vector<Factor> enumerate_even_symmetric_factors(const Nanoword& w, int max_letters, int max_k);
Nanoword apply_surgery(const Nanoword& w, const Factor& f);

std::optional<Bridge> validate_bridge(const Nanoword& w, const Factor& f, const std::vector<int>& kappa);
Nanoword apply_bridge(const Nanoword& w, const Bridge& b);
int arches(const Bridge& b);
std::vector<Bridge> enumerate_bridges(const Nanoword& w, int max_letters, int max_k);

enum class MoveKind { Iso, H1, H2, H3, Surgery, Bridge, Shift };

// A single step of a metamorphosis. Forward H1/H2/H3 use sites; surgeries
// and bridges use segments of the word they act on. Inverse insertions give
// the segments in the resulting word plus the inserted phrase (letters
// numbered 0..q-1) and their projections.
struct Move {
  MoveKind kind = MoveKind::Iso;
  bool inverse = false;
  std::vector<std::size_t> sites;
  std::vector<Segment> segments;
  std::vector<int> kappa;
  std::vector<std::vector<int>> inserted;
  std::vector<int> inserted_proj;
};

int arches(const Move& m);
Nanoword apply_move(const Nanoword& w, const Move& m);
std::string format_move(const Nanoword& before, const Move& m);
Move parse_move(const std::string& line, const InvolutiveAlphabet& ground);

struct Metamorphosis {
  std::vector<Move> moves;
  int total_arches() const;
};

Nanoword replay(const Nanoword& w, const Metamorphosis& m);
// Log lines of m applied from w, one per move.
std::string format_log(const Nanoword& w, const Metamorphosis& m);
Metamorphosis parse_log(const std::string& text, const InvolutiveAlphabet& ground);
// Moves that undo m, starting from replay(w, m).
Metamorphosis inverse_metamorphosis(const Nanoword& w, const Metamorphosis& m);

struct Caps {
  int max_letters = 6;
  int max_k = 4;
  int bfs_length = 0;          // 0: start length + 4
  std::size_t bfs_nodes = 2000;
  int s_bound = 2;
};

struct Repertoire {
  bool homotopy = true;
  bool surgery = true;
  bool insertions = true;
  bool shifts = false;
  std::vector<Nanophrase> templates;  // extra even symmetric phrases to insert
};

struct BfsOutcome {
  bool found = false;
  Metamorphosis path;
  std::size_t nodes = 0;
  bool exhausted = false;  // the whole capped state space was explored
};

// Breadth-first search over canonical words from w. Stops at v if given;
// visit is called on every newly discovered canonical word and may return
// false to stop.
BfsOutcome bounded_bfs(const Nanoword& w, const Nanoword& v, const Repertoire& rep, const Caps& caps);
BfsOutcome bfs_explore(const Nanoword& w, const Repertoire& rep, const Caps& caps,
                       const std::function<bool(const Nanoword&)>& visit);

struct NormBounds {
  int lower = 0;
  int upper = 0;
};

NormBounds length_norm_bounds(const Nanoword& w, const Caps& caps);

}  // namespace nanocob
