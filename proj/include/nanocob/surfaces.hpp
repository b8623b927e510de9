#pragma once

#include "nanocob/words.hpp"

#include <cstddef>
#include <vector>

namespace nanocob {

// {+, -} with the swap; "+" is the orbit representative.
AlphabetPtr sign_alphabet();

// Four-valent graph obtained by gluing the two entries of each letter of a
// word over a two-symbol swapped alphabet. Darts are numbered 2*pos (arc
// arriving at position pos) and 2*pos+1 (arc leaving it).
struct RibbonGraph {
  bool annulus = false;             // empty word
  std::vector<int> sign;            // per vertex (letter), +1 or -1
  std::vector<int> edge_mate;       // dart -> other end of its arc
  std::vector<int> rotation;        // dart -> next dart around its vertex
  std::size_t vertex_count() const { return sign.size(); }
  std::size_t edge_count() const { return edge_mate.size() / 2; }
};

struct SurfaceStats {
  int euler = 0;
  int boundary_components = 0;
  int genus = 0;
};

// Throws std::invalid_argument unless the ground alphabet has exactly two
// symbols swapped by tau.
RibbonGraph ribbon_graph_of(const Nanoword& w);
SurfaceStats surface_stats(const RibbonGraph& g);

// Rank of the full Gram matrix of p(w) under the map sending the
// representative symbol to 1.
std::size_t tautological_rank(const Nanoword& w);
// rank == 2 * genus.
bool genus_rank_check(const Nanoword& w);

}  // namespace nanocob
