#include "helpers.hpp"
#include "nanocob/explorer.hpp"
#include "nanocob/surfaces.hpp"

#include <doctest.h>

using namespace nanocob;
using testutil::word;

TEST_SUITE("surfaces") {
  TEST_CASE("small surfaces") {
    const auto s = sign_alphabet();
    const SurfaceStats empty = surface_stats(ribbon_graph_of(Nanoword(s, {}, {})));
    CHECK(empty.euler == 0);
    CHECK(empty.boundary_components == 2);
    CHECK(empty.genus == 0);

    const SurfaceStats loop = surface_stats(ribbon_graph_of(word(s, "A A / A=+")));
    CHECK(loop.euler == -1);
    CHECK(loop.genus == 0);
    CHECK(loop.boundary_components == 3);

    const Nanoword abab = word(s, "A B A B / A=+ B=+");
    const RibbonGraph g = ribbon_graph_of(abab);
    CHECK(g.vertex_count() == 2);
    CHECK(g.edge_count() == 4);
    CHECK(surface_stats(g).genus == 1);
    CHECK(tautological_rank(abab) == 2);
  }

  TEST_CASE("ribbon graphs need the sign alphabet") {
    CHECK_THROWS(ribbon_graph_of(word(testutil::free3(), "A A / A=a")));
  }

  TEST_CASE("genus equals half the tautological rank up to length 8") {
    const auto s = sign_alphabet();
    for (std::size_t n = 0; n <= 4; ++n) {
      for_each_nanoword(n, s, [&](const Nanoword& w) {
        const SurfaceStats st = surface_stats(ribbon_graph_of(w));
        REQUIRE(static_cast<std::size_t>(2 * st.genus) == tautological_rank(w));
        REQUIRE(st.euler == -static_cast<int>(n));
        REQUIRE(genus_rank_check(w));
      });
    }
  }
}
