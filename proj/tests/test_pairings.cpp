#include "helpers.hpp"
#include "nanocob/explorer.hpp"
#include "nanocob/pairings.hpp"

#include <doctest.h>

using namespace nanocob;
using testutil::word;

namespace {

// Direct evaluation of e_w from interleaving counts and the circle product,
// kept deliberately naive as an oracle for pairing_of_nanoword.
struct OraclePairing {
  std::size_t n = 0;
  std::vector<PiElement> m;  // (n+1)^2, index 0 = s
  PiElement& at(std::size_t i, std::size_t j) { return m[i * (n + 1) + j]; }
};

OraclePairing oracle(const Nanoword& w) {
  OraclePairing o;
  o.n = w.letter_count();
  o.m.assign((o.n + 1) * (o.n + 1), PiElement{});
  auto lo = [&](int a) { return w.positions(a).first; };
  auto hi = [&](int a) { return w.positions(a).second; };
  auto proj = [&](int a) { return pi_of_letter(w.ground(), w.projection(a)); };
  auto nw = [&](int a, int b) {
    if (lo(a) < lo(b) && lo(b) < hi(a) && hi(a) < hi(b)) return 1;
    if (lo(b) < lo(a) && lo(a) < hi(b) && hi(b) < hi(a)) return -1;
    return 0;
  };
  auto circ = [&](int a, int b) {
    PiElement sum;
    for (int d = 0; d < static_cast<int>(o.n); ++d) {
      if (lo(a) < lo(d) && lo(d) < hi(a) && lo(b) < hi(d) && hi(d) < hi(b)) sum += proj(d);
    }
    return sum;
  };
  const int n = static_cast<int>(o.n);
  for (int a = 0; a < n; ++a) {
    PiElement as;
    for (int d = 0; d < n; ++d) as += nw(a, d) * proj(d);
    o.at(a + 1, 0) = as;
    o.at(0, a + 1) = -as;
    for (int b = 0; b < n; ++b) {
      o.at(a + 1, b + 1) = 2 * (circ(a, b) - circ(b, a)) + nw(a, b) * (proj(a) + proj(b));
    }
  }
  return o;
}

PiElement sym(const Nanoword& w, const std::string& s) { return pi_of_letter(w.ground(), w.ground().index_of(s)); }

}  // namespace

TEST_SUITE("pairings") {
  TEST_CASE("pairing of ABCBAC") {
    const auto f = testutil::free3();
    const Nanoword w = word(f, "A B C B A C / A=a B=b C=c");
    const AlphaPairing p = pairing_of_nanoword(w);
    const PiElement a = sym(w, "a"), b = sym(w, "b"), c = sym(w, "c");
    CHECK(p.e(0, 1) == -c);
    CHECK(p.e(0, 2) == -c);
    CHECK(p.e(0, 3) == a + b);
    CHECK(p.e(1, 2).is_zero());
    CHECK(p.e(1, 3) == a + 2 * b + c);
    CHECK(p.e(2, 3) == b + c);
    CHECK(p.is_skew_symmetric());
    CHECK(format_pairing(p) ==
          "         s        A        B        C\n"
          "s        0       -c       -c      a+b\n"
          "A        c        0        0   a+2b+c\n"
          "B        c        0        0      b+c\n"
          "C     -a-b  -a-2b-c     -b-c        0\n");
    CHECK(pairing_of_nanoword_alt(w) == p);
  }

  TEST_CASE("pairing of ABAB and AA") {
    const auto f = testutil::free3();
    const Nanoword w = word(f, "A B A B / A=a B=b");
    const AlphaPairing p = pairing_of_nanoword(w);
    CHECK(p.e(1, 2) == sym(w, "a") + sym(w, "b"));
    CHECK(p.e(1, 0) == sym(w, "b"));
    CHECK(p.e(2, 0) == -sym(w, "a"));
    const AlphaPairing z = pairing_of_nanoword(word(f, "A A / A=a"));
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) CHECK(z.e(i, j).is_zero());
  }

  TEST_CASE("both formulas agree with the definition on random words") {
    Rng rng(11);
    for (int trial = 0; trial < 500; ++trial) {
      const auto alpha = random_alphabet(rng, 2, 1);
      const Nanoword w = random_word(rng, alpha, trial % 7);
      OraclePairing o = oracle(w);
      const AlphaPairing p = pairing_of_nanoword(w);
      const AlphaPairing q = pairing_of_nanoword_alt(w);
      for (std::size_t i = 0; i <= o.n; ++i) {
        for (std::size_t j = 0; j <= o.n; ++j) {
          REQUIRE(p.e(i, j) == o.at(i, j));
          REQUIRE(q.e(i, j) == o.at(i, j));
        }
      }
    }
  }

  TEST_CASE("filling enumeration") {
    const auto f = testutil::free3();
    const int a = f->index_of("a"), b = f->index_of("b");
    AlphaPairing same(f, {a, a}, std::vector<PiElement>(9));
    CHECK(enumerate_fillings(same).size() == 2);
    AlphaPairing diff(f, {a, b}, std::vector<PiElement>(9));
    CHECK(enumerate_fillings(diff).size() == 1);
    CHECK(enumerate_fillings(AlphaPairing::trivial(f)).size() == 1);
    AlphaPairing tau(f, {a, f->tau(a)}, std::vector<PiElement>(9));
    const auto fs = enumerate_fillings(tau);
    REQUIRE(fs.size() == 2);
    CHECK(format_filling(tau, fs[1]) == "{s, L1-L2}");
  }

  TEST_CASE("ABCADCBD is hyperbolic via {s, A-B, C+D}") {
    const auto f = testutil::free3();
    const Nanoword w = word(f, "A B C A D C B D / A=a B=a~ C=c D=c");
    const AlphaPairing p = pairing_of_nanoword(w);
    const Filling lam{SVector::basis(0), SVector{{{1, 1}, {2, -1}}}, SVector{{{3, 1}, {4, 1}}}};
    CHECK(is_filling(p, lam));
    CHECK(is_annihilating(p, lam));
    CHECK(is_hyperbolic(p).has_value());
    CHECK(u_polynomial(p).is_zero());
    CHECK(gamma_of(w).is_identity());
  }

  TEST_CASE("ABCBAC is not hyperbolic") {
    const auto f = testutil::free3();
    const AlphaPairing p = pairing_of_nanoword(word(f, "A B C B A C / A=a B=b C=c"));
    CHECK_FALSE(is_hyperbolic(p).has_value());
    std::size_t count = 0;
    for (const auto& lam : enumerate_fillings(p)) {
      ++count;
      CHECK_FALSE(is_annihilating(p, lam));
    }
    CHECK(count == 1);
  }

  TEST_CASE("u polynomial and degree") {
    const auto f = testutil::free3();
    const Nanoword w = word(f, "A B C B A C / A=a B=b C=c");
    const UPoly u = u_polynomial_of_nanoword(w);
    CHECK(format_upoly(u, *f) == "u(a)=d[c]; u(b)=d[c]; u(c)=-d[a+b]");
    CHECK(u_degree(u, *f, f->index_of("c")) == 2);
    CHECK(u_degree(u, *f, f->index_of("a")) == 1);
    CHECK(u_polynomial(opposite_pairing(pairing_of_nanoword(w))) == -u);
    const UPoly zero = u_polynomial_of_nanoword(word(f, "A A / A=a"));
    CHECK(zero.is_zero());
    CHECK(u_degree(zero, *f, f->index_of("a")) == 0);
  }

  TEST_CASE("genus") {
    const auto f = testutil::free3();
    const AlphaPairing abab = pairing_of_nanoword(word(f, "A B A B / A=a B=b"));
    CHECK(genus(abab, PhiSpec::parse(*f, "a=1,b=1,c=1")).twice_value == 2);
    const AlphaPairing p = pairing_of_nanoword(word(f, "A B C B A C / A=a B=b C=c"));
    CHECK(genus(p, PhiSpec::parse(*f, "a=1,b=1,c=1")).twice_value == 4);
    CHECK(genus(p, PhiSpec::parse(*f, "a=1,b=-1,c=1")).twice_value == 2);
    CHECK(genus(opposite_pairing(p), PhiSpec::parse(*f, "a=1,b=1,c=1")).twice_value == 4);
    const AlphaPairing h = pairing_of_nanoword(word(f, "A B C A D C B D / A=a B=a~ C=c D=c"));
    for (const auto& g : genera(h, sign_battery(*f))) CHECK(g.twice_value == 0);
  }

  TEST_CASE("sums, opposites, r") {
    const auto f = testutil::free3();
    const Nanoword w1 = word(f, "A B A B / A=a B=b");
    const Nanoword w2 = word(f, "A B C B A C / A=a B=b C=c");
    const AlphaPairing p1 = pairing_of_nanoword(w1), p2 = pairing_of_nanoword(w2);
    CHECK(pairing_isomorphism(pairing_of_nanoword(concatenate(w1, w2)), sum_pairings(p1, p2)).has_value());
    CHECK(pairing_isomorphism(sum_pairings(p1, AlphaPairing::trivial(f)), p1).has_value());
    CHECK(opposite_pairing(opposite_pairing(p2)) == p2);
    CHECK(are_cobordant(p2, p2));
    CHECK_FALSE(are_cobordant(AlphaPairing::trivial(f), p1));
    const PiElement a = pi_of_letter(*f, f->index_of("a"));
    CHECK(r_of(p1).is_zero());
    CHECK(r_of(AlphaPairing::point(f, a)) == a);
    CHECK(r_of(sum_pairings(AlphaPairing::point(f, a), AlphaPairing::point(f, a))) == 2 * a);
  }

  TEST_CASE("surgery filling for ABACDCDB") {
    const auto f = testutil::free3();
    const Nanoword w = word(f, "A B A C D C D B / A=a B=a C=c D=c");
    const Factor cd = factor_from_segments(w, {{3, 7}});
    std::string why;
    CHECK(verify_surgery_filling(w, cd, &why));
    const Nanoword vv = concatenate(w, opposite(w));
    CHECK(verify_surgery_filling(vv, factor_from_segments(vv, {{0, vv.length()}}), &why));
  }

  TEST_CASE("m-shift models the circular shift") {
    const auto f = testutil::free3();
    const Nanoword w = word(f, "A B C B A C / A=a B=b C=c");
    const AlphaPairing p = pairing_of_nanoword(w);
    const AlphaPairing shifted = pairing_of_nanoword(circular_shift(w));
    CHECK(pairing_isomorphism(shifted, m_shift(p, w.at(0), 2)).has_value());
    const AlphaPairing h = pairing_of_nanoword(word(f, "A B C A D C B D / A=a B=a~ C=c D=c"));
    CHECK(is_hyperbolic(m_shift(h, 0, 2)).has_value());
  }

  TEST_CASE("tuples") {
    const auto f = testutil::free3();
    const PhiSpec phi = PhiSpec::parse(*f, "a=1,b=1,c=1");
    const AlphaPairing p = pairing_of_nanoword(word(f, "A B A B / A=a B=b"));
    const AlphaPairing q = pairing_of_nanoword(word(f, "A B C B A C / A=a B=b C=c"));
    CHECK(tuple_genus({p, q}, phi, 2) == tuple_genus({p, q, AlphaPairing::trivial(f)}, phi, 2));
    const AlphaPairing h = pairing_of_nanoword(word(f, "A B C A D C B D / A=a B=a~ C=c D=c"));
    CHECK(is_hyperbolic_tuple({h, AlphaPairing::trivial(f)}, 1).has_value());
    CHECK(weakly_cobordant(q, q, 1));
    CHECK_THROWS(tuple_genus({p}, phi, 0));
  }

  TEST_CASE("covering deletes letters with e(A,s) outside H") {
    const auto f = testutil::free3();
    const Nanoword w = word(f, "A B A B / A=a B=b");
    auto gen = [&](const char* s) { return 2 * pi_of_letter(*f, f->index_of(s)); };
    const std::vector<PiElement> even{gen("a"), gen("b"), gen("c")};
    CHECK(covering(w, CoveringSpec{{even, even, even}}).empty());
    CHECK(in_subgroup(*f, even, gen("a") + gen("c")));
    const auto a = pi_of_letter(*f, f->index_of("a")), b = pi_of_letter(*f, f->index_of("b")),
               c = pi_of_letter(*f, f->index_of("c"));
    CHECK(covering(w, CoveringSpec{{{a, b, c}, {a, b, c}, {a, b, c}}}) == w);
  }
}

TEST_SUITE("pairings") {
  TEST_CASE("m-shift composed with itself at the same letter is the identity") {
    Rng rng(12);
    for (int trial = 0; trial < 200; ++trial) {
      const auto alpha = random_alphabet(rng, 2, 1);
      const std::size_t core = 1 + trial % 4;
      const AlphaPairing p = random_pairing(rng, alpha, core, 2);
      const int letter = static_cast<int>(trial % core);
      const std::int64_t m = (trial % 5) - 2;
      const AlphaPairing q = m_shift(m_shift(p, letter, m), letter, m);
      REQUIRE(pairing_isomorphism(q, p).has_value());
      const AlphaPairing once = m_shift(p, letter, m);
      REQUIRE(once.is_skew_symmetric() == p.is_skew_symmetric());
      REQUIRE(once.e(static_cast<std::size_t>(letter) + 1, 0) == -p.e(static_cast<std::size_t>(letter) + 1, 0));
    }
  }
}
