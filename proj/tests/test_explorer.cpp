#include "helpers.hpp"
#include "nanocob/explorer.hpp"

#include <doctest.h>

#include <atomic>

using namespace nanocob;
using testutil::word;

TEST_SUITE("explorer") {
  TEST_CASE("slice verdicts") {
    const auto f = testutil::free3();
    const Caps caps;
    const SliceVerdict empty = slice_status(Nanoword(f, {}, {}), caps);
    CHECK(format_verdict(empty) == "Slice");
    const SliceVerdict aa = slice_status(word(f, "A A / A=a"), caps);
    CHECK(aa.status == SliceStatus::Slice);
    CHECK(replay(word(f, "A A / A=a"), aa.witness).empty());
    const SliceVerdict wab = slice_status(word(f, "A B A B / A=a B=b"), caps);
    CHECK(format_verdict(wab) == "NotSlice(gamma)");
    CHECK(wab.all_obstructions == std::vector<std::string>{"gamma", "pairing", "u", "sigma"});
    const SliceVerdict waa = slice_status(word(f, "A B A B / A=a B=a~"), caps);
    CHECK(waa.status == SliceStatus::Slice);
  }

  TEST_CASE("unknown when no invariant or search decides") {
    const auto f = testutil::free3();
    Caps tiny;
    tiny.bfs_nodes = 1;
    tiny.max_letters = 1;
    tiny.max_k = 1;
    const SliceVerdict v = slice_status(word(f, "A B A C D C D B / A=a B=a C=c D=c"), tiny);
    CHECK(v.status == SliceStatus::Unknown);
    CHECK(format_verdict(v).rfind("Unknown(letters=1,k=1,", 0) == 0);
  }

  TEST_CASE("ABCADCBD slice verdicts replay") {
    const auto f = testutil::free3();
    const Nanoword w = word(f, "A B C A D C B D / A=a B=a~ C=c D=c");
    const SliceVerdict v = slice_status(w, Caps{});
    CHECK(v.status != SliceStatus::NotSlice);
    if (v.status == SliceStatus::Slice) CHECK(replay(w, v.witness).empty());
  }

  TEST_CASE("invariant records are isomorphism invariant") {
    const auto f = testutil::free3();
    const InvariantRecord r1 = invariant_record(word(f, "A B C B A C / A=a B=b C=c"));
    const InvariantRecord r2 = invariant_record(word(f, "X Y Z Y X Z / X=a Y=b Z=c"));
    CHECK(r1.word == r2.word);
    CHECK(r1.gamma == r2.gamma);
    CHECK(r1.u == r2.u);
    CHECK(r1.genera == r2.genera);
    CHECK_FALSE(r1.hyperbolic);
  }

  TEST_CASE("classification at half-length 2 over two free orbits") {
    const auto f = testutil::free2();
    const Classification c = classify(2, f, Caps{}, true, 2);
    CHECK(c.rows.size() == 1 + 4 + 3 * 16);
    for (const auto& row : c.rows) CHECK(row.verdict.status != SliceStatus::Unknown);
    CHECK_THROWS(classify(2, f, Caps{}, false));
  }

  TEST_CASE("parallel_for covers every index and rethrows") {
    std::atomic<int> sum{0};
    parallel_for(100, 4, [&](std::size_t i) { sum += static_cast<int>(i); });
    CHECK(sum == 4950);
    CHECK_THROWS(parallel_for(10, 3, [](std::size_t i) {
      if (i == 7) throw std::runtime_error("boom");
    }));
  }

  TEST_CASE("random generators respect their contracts") {
    Rng rng(5);
    for (int trial = 0; trial < 200; ++trial) {
      const auto alpha = random_alphabet(rng, 2, 1);
      const std::size_t half = 1 + trial % 4;
      const Nanophrase v = random_even_symmetric_phrase(rng, alpha, half, 1 + trial % half);
      REQUIRE(is_even(v));
      REQUIRE(symmetry_witness(v).has_value());
      const EmbeddedFactor e = embed_phrase(rng, v, random_word(rng, alpha, trial % 3));
      REQUIRE(is_even_symmetric(e.word, e.factor));
      const AlphaPairing p = random_pairing(rng, alpha, trial % 4, 2);
      REQUIRE(p.is_skew_symmetric());
    }
  }
}
