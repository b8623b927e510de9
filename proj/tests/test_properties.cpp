#include "helpers.hpp"
#include "nanocob/explorer.hpp"
#include "nanocob/suites.hpp"

#include <doctest.h>

#include <algorithm>

using namespace nanocob;

namespace {

void require_passed(const SuiteResult& r) {
  INFO(r.name << ": " << (r.messages.empty() ? std::string() : r.messages.front()));
  CHECK(r.cases > 0);
  CHECK(r.failures == 0);
}

}  // namespace

TEST_SUITE("properties") {
  // Seeds differ from the acceptance run so the two cover different samples.
  TEST_CASE("surgery filling annihilates") {
    Rng rng(101);
    require_passed(surgery_suite(rng, 150));
  }

  TEST_CASE("invariants survive moves") {
    Rng rng(102);
    require_passed(move_invariance_suite(rng, 200));
  }

  TEST_CASE("shift invariance") {
    Rng rng(103);
    require_passed(shift_suite(rng, 100));
  }

  TEST_CASE("genus inequalities") {
    Rng rng(104);
    require_passed(triangle_suite(rng, 60));
    require_passed(subadditivity_suite(rng, 60));
    require_passed(sandwich_suite(rng, 30, 2));
  }

  TEST_CASE("bridge inequality") {
    Rng rng(105);
    require_passed(bridge_suite(rng, 20, 2));
  }

  TEST_CASE("opposite is the inverse for every invariant") {
    Rng rng(106);
    for (int trial = 0; trial < 200; ++trial) {
      const auto alpha = random_alphabet(rng, 2, 1);
      const Nanoword w = random_word(rng, alpha, 1 + trial % 5);
      const Nanoword v = random_word(rng, alpha, trial % 4);
      const Nanoword wv = concatenate(w, v);
      REQUIRE(gamma_of(wv) == gamma_of(w) * gamma_of(v));
      REQUIRE(u_polynomial_of_nanoword(wv) == u_polynomial_of_nanoword(w) + u_polynomial_of_nanoword(v));
      REQUIRE(u_polynomial_of_nanoword(opposite(w)) == -u_polynomial_of_nanoword(w));
      REQUIRE(gamma_of(opposite(w)) == gamma_of(w).inverse());
      const Nanoword ww = concatenate(w, opposite(w));
      REQUIRE(is_even_symmetric(ww, factor_from_segments(ww, {{0, ww.length()}})));
    }
  }

  TEST_CASE("genus of the opposite pairing") {
    Rng rng(107);
    for (int trial = 0; trial < 100; ++trial) {
      const auto alpha = random_alphabet(rng, 2, 1);
      const AlphaPairing p = random_pairing(rng, alpha, trial % 5, 2);
      for (const auto& phi : sign_battery(*alpha)) REQUIRE(genus(p, phi) == genus(opposite_pairing(p), phi));
    }
  }

  TEST_CASE("canonical form decides isomorphism") {
    Rng rng(108);
    for (int trial = 0; trial < 300; ++trial) {
      const auto alpha = random_alphabet(rng, 2, 1);
      const Nanoword w = random_word(rng, alpha, trial % 6);
      // Relabel letters by a random permutation.
      std::vector<int> perm(w.letter_count());
      for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<int>(i);
      std::shuffle(perm.begin(), perm.end(), rng);
      std::vector<int> seq;
      for (int x : w.sequence()) seq.push_back(perm[static_cast<std::size_t>(x)]);
      std::vector<int> proj(perm.size());
      for (std::size_t i = 0; i < perm.size(); ++i) proj[static_cast<std::size_t>(perm[i])] = w.projection(static_cast<int>(i));
      const Nanoword v(w.ground_ptr(), seq, proj);
      REQUIRE(canonical_form(v) == canonical_form(w));
      REQUIRE(canonical_form(canonical_form(w)) == canonical_form(w));
    }
  }
}
