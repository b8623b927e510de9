#include "helpers.hpp"
#include "nanocob/explorer.hpp"
#include "nanocob/moves.hpp"

#include <doctest.h>

using namespace nanocob;
using testutil::word;

TEST_SUITE("moves") {
  TEST_CASE("H1 deletes AA") {
    const auto f = testutil::free3();
    const Nanoword w = word(f, "A A B C B C / A=a B=b C=c");
    CHECK(find_h1_sites(w) == std::vector<std::size_t>{0});
    CHECK(apply_h1(w, 0).to_string() == "B C B C");
    CHECK_THROWS(apply_h1(w, 1));
  }

  TEST_CASE("H2 needs |B| = tau|A|") {
    const auto f = testutil::free3();
    const Nanoword x = word(f, "A B C C B A / A=a B=a~ C=c");
    REQUIRE(find_h2_sites(x).size() == 1);
    CHECK(apply_h2(x, find_h2_sites(x)[0]).to_string() == "C C");
    CHECK(find_h2_sites(word(f, "A B C C B A / A=a B=a C=c")).empty());
  }

  TEST_CASE("H3 rewrites ABACBC to BACACB and back") {
    const auto f = testutil::free3();
    const Nanoword w = word(f, "A B A C B C / A=a B=a C=a");
    const auto sites = find_h3_sites(w);
    REQUIRE(sites.size() == 1);
    const Nanoword v = apply_h3(w, sites[0]);
    CHECK(v.to_string() == "B A C A C B");
    const auto back = find_h3_sites(v, true);
    REQUIRE_FALSE(back.empty());
    bool returned = false;
    for (const auto& s : back) returned = returned || isomorphic(apply_h3(v, s, true), w);
    CHECK(returned);
    CHECK(find_h3_sites(word(f, "A B A C B C / A=a B=b C=a")).empty());
  }

  TEST_CASE("H3 followed by its inverse is the identity on random words") {
    Rng rng(3);
    const auto m = testutil::mixed();
    std::size_t checked = 0;
    for (int trial = 0; trial < 3000 && checked < 100; ++trial) {
      const Nanoword w = random_word(rng, m, 3 + trial % 4);
      for (const auto& s : find_h3_sites(w)) {
        const Nanoword v = apply_h3(w, s);
        bool ok = false;
        for (const auto& t : find_h3_sites(v, true)) ok = ok || isomorphic(apply_h3(v, t, true), w);
        CHECK(ok);
        ++checked;
      }
    }
    CHECK(checked > 0);
  }

  TEST_CASE("surgery on ABACDCDB") {
    const auto f = testutil::free3();
    const Nanoword w = word(f, "A B A C D C D B / A=a B=a C=c D=c");
    const Factor cd = factor_from_segments(w, {{3, 7}});
    CHECK(is_even_symmetric(w, cd));
    const Nanoword x = apply_surgery(w, cd);
    CHECK(x.to_string() == "A B A B");
    CHECK(apply_surgery(x, factor_from_segments(x, {{0, 4}})).empty());
    const auto factors = enumerate_even_symmetric_factors(w, 6, 4);
    CHECK(std::find(factors.begin(), factors.end(), cd) != factors.end());
    CHECK_THROWS(apply_surgery(w, factor_from_segments(w, {{0, 4}})));
  }

  TEST_CASE("bridges") {
    const auto f = testutil::free3();
    // (A|A) with kappa=(12): one arch.
    const Nanoword w1 = word(f, "B A C A B C / A=a B=b C=c");
    const auto b1 = validate_bridge(w1, factor_from_segments(w1, {{1, 2}, {3, 4}}), {1, 0});
    REQUIRE(b1.has_value());
    CHECK(arches(*b1) == 1);
    CHECK(apply_bridge(w1, *b1).to_string() == "B C B C");
    // (A|BCBC|A) with kappa=(13).
    const Nanoword w3 = word(f, "A B C B C D A D / A=a B=b C=b D=c");
    const auto b3 = validate_bridge(w3, factor_from_segments(w3, {{0, 1}, {1, 5}, {6, 7}}), {2, 1, 0});
    REQUIRE(b3.has_value());
    CHECK(apply_bridge(w3, *b3).to_string() == "D D");
    // (A|BC|CA|B) with kappa=(14)(23).
    const Nanoword w4 = word(f, "A D E B C D C A E B / A=a B=a C=b D=c E=a~");
    const auto b4 = validate_bridge(w4, factor_from_segments(w4, {{0, 1}, {3, 5}, {6, 8}, {9, 10}}), {3, 2, 1, 0});
    REQUIRE(b4.has_value());
    CHECK(arches(*b4) == 2);
    CHECK(apply_bridge(w4, *b4).to_string() == "D E D E");
    // kappa = id on an even symmetric factor is a 0-arch bridge.
    const Nanoword w = word(f, "A B A C D C D B / A=a B=a C=c D=c");
    const auto b0 = validate_bridge(w, factor_from_segments(w, {{3, 7}}), {0});
    REQUIRE(b0.has_value());
    CHECK(arches(*b0) == 0);
    CHECK_FALSE(validate_bridge(w4, factor_from_segments(w4, {{0, 1}, {3, 5}, {6, 8}, {9, 10}}), {0, 1, 2, 3}));
  }

  TEST_CASE("move log round trip") {
    const auto f = testutil::free3();
    const Nanoword w = word(f, "A B A C D C D B / A=a B=a C=c D=c");
    const std::string text =
        "# two surgeries\n"
        "SURG letters=C,D segs=3-7\n"
        "INV H1@2 proj=b\n"
        "H1@2\n"
        "SURG letters=A,B segs=0-4\n";
    const Metamorphosis m = parse_log(text, *f);
    REQUIRE(m.moves.size() == 4);
    CHECK(replay(w, m).empty());
    CHECK(m.total_arches() == 0);
    const std::string again = format_log(w, m);
    CHECK(format_log(w, parse_log(again, *f)) == again);
    const Metamorphosis inv = inverse_metamorphosis(w, m);
    CHECK(isomorphic(replay(Nanoword(f, {}, {}), inv), w));
  }

  TEST_CASE("log parse errors") {
    const auto f = testutil::free3();
    CHECK_THROWS_AS(parse_move("JUMP@1", *f), std::invalid_argument);
    CHECK_THROWS_AS(parse_move("SURG segs=3", *f), std::invalid_argument);
    CHECK_THROWS_AS(parse_move("BRIDGE segs=0-1,2-3 kappa=0,1", *f), std::invalid_argument);
    CHECK_THROWS_AS(parse_move("INV H1@0 proj=zz", *f), std::invalid_argument);
    CHECK_THROWS_AS(parse_move("H1@0 color=red", *f), std::invalid_argument);
  }

  TEST_CASE("bounded search") {
    const auto f = testutil::free3();
    const Nanoword w = word(f, "A B B A / A=a B=b");
    const BfsOutcome r = bounded_bfs(w, Nanoword(f, {}, {}), Repertoire{}, Caps{});
    REQUIRE(r.found);
    CHECK(replay(w, r.path).empty());
    const BfsOutcome s = bounded_bfs(word(f, "A B A B / A=a B=b"), word(f, "A B A B / A=b B=a~"), Repertoire{true, true, true, true, {}}, Caps{});
    CHECK(s.found);
  }

  TEST_CASE("length norm bounds") {
    const auto f = testutil::free3();
    Caps caps;
    const NormBounds n1 = length_norm_bounds(word(f, "A B C B A C / A=a B=b C=c"), caps);
    CHECK(n1.lower == 3);
    CHECK(n1.upper == 3);
    const NormBounds n2 = length_norm_bounds(word(f, "A B A B / A=a B=b"), caps);
    CHECK(n2.lower == 2);
    CHECK(n2.upper == 2);
    const NormBounds n0 = length_norm_bounds(word(f, "A B B A / A=a B=c"), caps);
    CHECK(n0.lower == 0);
    CHECK(n0.upper == 0);
  }
}
