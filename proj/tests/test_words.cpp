#include "helpers.hpp"
#include "nanocob/explorer.hpp"
#include "nanocob/words.hpp"

#include <doctest.h>

#include <set>

using namespace nanocob;
using testutil::word;

TEST_SUITE("words") {
  TEST_CASE("construction validates occurrence counts and projections") {
    const auto f = testutil::free3();
    const Nanoword w = word(f, "A B A B / A=a B=b");
    CHECK(w.length() == 4);
    CHECK(w.letter_count() == 2);
    CHECK(w.positions(w.letter_id("B")) == std::pair<std::size_t, std::size_t>{1, 3});
    CHECK(w.to_string() == "A B A B");
    CHECK_THROWS(make_word(f, "A B A", {{"A", "a"}, {"B", "b"}}));
    CHECK_THROWS(make_word(f, "A A", {{"A", "zz"}}));
  }

  TEST_CASE("canonical form renames by first occurrence") {
    const auto f = testutil::free3();
    const Nanoword w = canonical_form(word(f, "X Y X Y / X=a Y=b"));
    CHECK(w.to_string() == "L1 L2 L1 L2");
    CHECK(w.projection_string() == "L1=a L2=b");
    CHECK(canonical_form(w) == w);
    CHECK(isomorphic(word(f, "B A A B / A=a B=b"), word(f, "A B B A / A=b B=a")));
    CHECK_FALSE(isomorphic(word(f, "A B B A / A=a B=b"), word(f, "A B B A / A=b B=b")));
  }

  TEST_CASE("opposite and concatenation") {
    const auto f = testutil::free3();
    CHECK(opposite(word(f, "A B C B A C / A=a B=b C=c")).to_string() == "C A B C B A");
    CHECK(opposite(opposite(word(f, "A B A B / A=a B=b"))) == word(f, "A B A B / A=a B=b"));
    CHECK(opposite(word(f, "() / ")).empty());
    const Nanoword ww = concatenate(word(f, "A B A B / A=a B=b"), word(f, "A B A B / A=a B=b"));
    CHECK(canonical_form(ww).to_string() == "L1 L2 L1 L2 L3 L4 L3 L4");
  }

  TEST_CASE("circular shift") {
    const auto f = testutil::free3();
    // w_{a,b} -> w_{b, tau(a)}
    CHECK(isomorphic(circular_shift(word(f, "A B A B / A=a B=b")), word(f, "A B A B / A=b B=a~")));
    CHECK(isomorphic(circular_shift(word(f, "A A / A=a")), word(f, "A A / A=a~")));
    CHECK_THROWS(circular_shift(word(f, "() / ")));
    const Nanoword w = word(f, "A B C B A C / A=a B=b C=c");
    CHECK(isomorphic(inverse_circular_shift(circular_shift(w)), w));
  }

  TEST_CASE("shift^n returns an isomorphic word") {
    Rng rng(7);
    const auto f = testutil::free3();
    for (int trial = 0; trial < 100; ++trial) {
      const Nanoword w = random_word(rng, f, 1 + trial % 5);
      Nanoword v = w;
      for (std::size_t i = 0; i < w.length(); ++i) v = circular_shift(v);
      CHECK(isomorphic(v, w));
    }
  }

  TEST_CASE("symmetry of words and phrases") {
    const auto f = testutil::free3();
    CHECK(symmetry_witness(word(f, "A B B A / A=a B=c")).has_value());
    CHECK(symmetry_witness(word(f, "A B A B / A=a B=a")).has_value());
    CHECK_FALSE(symmetry_witness(word(f, "A B A B / A=a B=b")).has_value());
    const Nanophrase ok = make_phrase(f, "A B | B A", {{"A", "a"}, {"B", "a~"}});
    const Nanophrase bad = make_phrase(f, "A B | B A", {{"A", "a"}, {"B", "a"}});
    CHECK(symmetry_witness(ok).has_value());
    CHECK_FALSE(symmetry_witness(bad).has_value());
    CHECK(is_even(ok));
    CHECK_FALSE(is_even(make_phrase(f, "A | A", {{"A", "a"}})));
    CHECK(epsilon(ok, 0) == 1);
    CHECK(epsilon(make_phrase(f, "A A | B B", {{"A", "a"}, {"B", "b"}}), 0) == 0);
  }

  TEST_CASE("gamma") {
    const auto f = testutil::free3();
    CHECK(gamma_of(word(f, "A A / A=a")).is_identity());
    CHECK(format_pi_word(gamma_of(word(f, "A B A B / A=a B=b"))) == "z_a z_b z_a^-1 z_b^-1");
    CHECK(gamma_of(word(f, "A B A B / A=a B=a")).is_identity());
  }

  TEST_CASE("delete, pull back, push forward") {
    const auto f = testutil::free3();
    const Nanoword w = word(f, "A B C B A C / A=a B=b C=c");
    std::vector<bool> doomed(3, false);
    doomed[static_cast<std::size_t>(w.letter_id("B"))] = true;
    CHECK(delete_letters(w, doomed).to_string() == "A C A C");
    // Collapse every orbit onto a: the map sends x -> a, x~ -> a~.
    const auto g = testutil::free2();
    const std::vector<int> fmap{0, 1, 0, 1, 0, 1};
    const Nanoword pushed = push_forward(w, g, fmap);
    CHECK(pushed.projection_string() == "A=a B=a C=a");
  }

  TEST_CASE("enumeration count is (2n-1)!! |alpha|^n with no duplicates") {
    const auto f = testutil::free2();
    const auto m = testutil::mixed();
    const std::size_t dfact[] = {1, 1, 3, 15};
    for (std::size_t n = 0; n <= 3; ++n) {
      std::size_t pw4 = 1, pw3 = 1;
      for (std::size_t i = 0; i < n; ++i) pw4 *= 4, pw3 *= 3;
      const auto all = enumerate_nanowords(n, f, true);
      CHECK(all.size() == dfact[n] * pw4);
      std::set<std::string> keys;
      for (const auto& w : all) keys.insert(canonical_key(w));
      CHECK(keys.size() == all.size());
      CHECK(enumerate_nanowords(n, m).size() == dfact[n] * pw3);
    }
    CHECK_THROWS(enumerate_nanowords(2, f));
    CHECK_THROWS(enumerate_nanowords(7, m));
  }
}
