#include "helpers.hpp"
#include "nanocob/algebra.hpp"
#include "nanocob/linalg.hpp"

#include <doctest.h>

using namespace nanocob;

TEST_SUITE("algebra") {
  TEST_CASE("orbit decomposition separates free and fixed orbits") {
    const auto m = testutil::mixed();
    REQUIRE(m->orbits().size() == 2);
    CHECK(m->orbits()[0].kind == OrbitKind::Free);
    CHECK(m->orbits()[0].members == std::vector<int>{0, 1});
    CHECK(m->orbits()[1].kind == OrbitKind::Fixed);
    CHECK(m->is_fixed(m->index_of("t")));
    CHECK(m->tau(m->index_of("a")) == m->index_of("a~"));
    CHECK_FALSE(m->fixed_point_free());
    CHECK(testutil::free3()->fixed_point_free());
    CHECK(testutil::free3()->free_orbit_count() == 3);
  }

  TEST_CASE("tau must be an involution") {
    CHECK_THROWS_AS(InvolutiveAlphabet({"a", "b", "c"}, {1, 2, 0}), std::invalid_argument);
    CHECK_THROWS_AS(InvolutiveAlphabet::from_pairs({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}}), std::invalid_argument);
  }

  TEST_CASE("pi: a + tau(a) = 0 and 2t = 0 on fixed points") {
    const auto m = testutil::mixed();
    const PiElement a = pi_of_letter(*m, m->index_of("a"));
    const PiElement abar = pi_of_letter(*m, m->index_of("a~"));
    const PiElement t = pi_of_letter(*m, m->index_of("t"));
    CHECK((a + abar).is_zero());
    CHECK((t + t).is_zero());
    CHECK(t == -t);
    CHECK(t.has_torsion());
    CHECK_FALSE(a.is_self_negative());
    CHECK((3 * a).coefficient(0) == 3);
    CHECK((3 * a).free_degree() == 3);
    CHECK(format_pi(*m, a - abar) == "2a");
  }

  TEST_CASE("Pi words reduce freely and by z_t^2 = 1") {
    const auto m = testutil::mixed();
    const int a = m->index_of("a"), abar = m->index_of("a~"), t = m->index_of("t");
    CHECK((PiWord::generator(m, a) * PiWord::generator(m, abar)).is_identity());
    CHECK((PiWord::generator(m, t) * PiWord::generator(m, t)).is_identity());
    const PiWord x = PiWord::generator(m, a) * PiWord::generator(m, t) * PiWord::generator(m, a);
    CHECK(x.letter_length() == 3);
    CHECK((x * x.inverse()).is_identity());
    CHECK(abelianize(x) == pi_of_letter(*m, a) + pi_of_letter(*m, a) + pi_of_letter(*m, t));
  }

  TEST_CASE("conjugacy classes are detected through cyclic reduction") {
    const auto f = testutil::free2();
    const PiWord za = PiWord::generator(f, f->index_of("a"));
    const PiWord zb = PiWord::generator(f, f->index_of("b"));
    CHECK(cyclic_reduction(za * zb * za.inverse()) == zb);
    CHECK(pi_word_is_conjugate(za * zb, zb * za));
    CHECK_FALSE(pi_word_is_conjugate(za * zb, za * zb.inverse()));
    CHECK(conjugacy_normal_form(za * zb) == conjugacy_normal_form(zb * za));
  }

  TEST_CASE("PhiSpec parse and apply") {
    const auto f = testutil::free3();
    const PhiSpec phi = PhiSpec::parse(*f, "a=1,b=-1,c=2");
    const PiElement x = pi_of_letter(*f, f->index_of("a")) + pi_of_letter(*f, f->index_of("b~")) +
                        pi_of_letter(*f, f->index_of("c"));
    CHECK(phi.apply(x) == Rational(4));
    CHECK(phi.id(*f) == "a=1,b=-1,c=2");
    const PhiSpec p3 = PhiSpec::parse(*f, "a=1,b=1,c=1;p=3");
    CHECK(p3.field() == FieldKind::PrimeField);
    CHECK(p3.apply(x + x) == Rational(2));  // 2*(1+(-1)+1)=2
    CHECK_THROWS(PhiSpec::parse(*f, "z=1"));
    // First free orbit pinned to +1, so 2^(3-1) sign choices.
    CHECK(sign_battery(*f).size() == 4);
  }

  TEST_CASE("exact ranks") {
    IntMatrix m(3, 3);
    m(0, 1) = -1; m(0, 2) = 1;
    m(1, 0) = 1;  m(1, 2) = 2;
    m(2, 0) = -1; m(2, 1) = -2;
    CHECK(rank_over_q(m) == 2);
    IntMatrix d(2, 2);
    d(0, 0) = 2; d(1, 1) = 4;
    CHECK(rank_over_q(d) == 2);
    CHECK(rank_mod_p(d, 2) == 0);
    CHECK(rank_mod_p(d, 3) == 2);
    IntMatrix big(2, 2);
    big(0, 0) = 1'000'000'007; big(0, 1) = 999'999'937;
    big(1, 0) = 999'999'937;   big(1, 1) = 1'000'000'007;
    CHECK(rank_over_q(big) == 2);
  }

  TEST_CASE("integer lattice membership") {
    IntegerLattice l(2);
    l.add_generator({2, 0});
    l.add_generator({0, 2});
    CHECK(l.contains({4, -2}));
    CHECK_FALSE(l.contains({1, 0}));
    l.add_generator({1, 1});
    CHECK(l.contains({1, -1}));
    CHECK_FALSE(l.contains({1, 0}));
  }
}
