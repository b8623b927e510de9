#include "nanocob/suites.hpp"

#include "nanocob/surfaces.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>

namespace nanocob {

namespace {

constexpr std::size_t kMaxMessages = 5;

std::size_t pick(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

void fail(SuiteResult& r, const std::string& msg) {
  ++r.failures;
  if (r.messages.size() < kMaxMessages) r.messages.push_back(msg);
}

std::string describe(const Nanoword& w) { return "[" + w.to_string() + " / " + w.projection_string() + "]"; }

template <typename Body>
SuiteResult timed(const std::string& name, Body body) {
  SuiteResult r;
  r.name = name;
  const auto start = std::chrono::steady_clock::now();
  body(r);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

struct WordInvariants {
  PiWord gamma;
  UPoly u;
  std::vector<Genus> genera;
};

WordInvariants invariants_of(const Nanoword& w, const std::vector<PhiSpec>& phis) {
  return {gamma_of(w), u_polynomial_of_nanoword(w), genera(pairing_of_nanoword(w), phis)};
}

// Empty string when equal, else the name of the first differing invariant.
std::string compare(const WordInvariants& a, const WordInvariants& b, bool gamma_up_to_conjugacy) {
  const bool gamma_ok = gamma_up_to_conjugacy ? pi_word_is_conjugate(a.gamma, b.gamma) : a.gamma == b.gamma;
  if (!gamma_ok) return "gamma";
  if (!(a.u == b.u)) return "u";
  if (a.genera != b.genera) return "sigma";
  return "";
}

// Inserts "A B" at p1, "A C" at p2, "B C" at p3 (positions of x, p1 <= p2
// <= p3), all projected to symbol. The result has a forward H3 site.
Nanoword with_h3_pattern(const Nanoword& x, std::size_t p1, std::size_t p2, std::size_t p3, int symbol) {
  const int m = static_cast<int>(x.letter_count());
  const int A = m;
  const int B = m + 1;
  const int C = m + 2;
  std::vector<int> seq;
  for (std::size_t p = 0; p <= x.length(); ++p) {
    if (p == p1) seq.insert(seq.end(), {A, B});
    if (p == p2) seq.insert(seq.end(), {A, C});
    if (p == p3) seq.insert(seq.end(), {B, C});
    if (p < x.length()) seq.push_back(x.at(p));
  }
  std::vector<int> proj = x.projection();
  proj.insert(proj.end(), {symbol, symbol, symbol});
  return Nanoword(x.ground_ptr(), std::move(seq), std::move(proj));
}

void check_move_case(SuiteResult& r, Rng& rng) {
  const AlphabetPtr alpha = random_alphabet(rng, 3, 1);
  const auto phis = sign_battery(*alpha);
  const Nanoword x = random_word(rng, alpha, pick(rng, 0, 4));
  const std::size_t n = x.length();
  const int symbol = static_cast<int>(pick(rng, 0, alpha->size() - 1));
  Nanoword before;
  Nanoword after;
  std::string kind;
  switch (pick(rng, 0, 3)) {
    case 0: {
      kind = "H1";
      const std::size_t i = pick(rng, 0, n);
      Move m{MoveKind::H1, true, {i}, {}, {}, {}, {symbol}};
      before = apply_move(x, m);
      after = apply_h1(before, i);
      if (!isomorphic(after, x)) fail(r, "H1 deletion does not undo insertion " + describe(before));
      break;
    }
    case 1: {
      kind = "H2";
      const std::size_t i = pick(rng, 0, n);
      const std::size_t j = pick(rng, i, n);
      Move m{MoveKind::H2, true, {i, j + 2}, {}, {}, {}, {symbol}};
      before = apply_move(x, m);
      after = apply_h2(before, {i, j + 2});
      if (!isomorphic(after, x)) fail(r, "H2 deletion does not undo insertion " + describe(before));
      break;
    }
    case 2: {
      kind = "H3";
      std::size_t p[3] = {pick(rng, 0, n), pick(rng, 0, n), pick(rng, 0, n)};
      std::sort(p, p + 3);
      const Nanoword w = with_h3_pattern(x, p[0], p[1], p[2], symbol);
      const auto sites = find_h3_sites(w, false);
      if (sites.empty()) {
        fail(r, "no H3 site in constructed word " + describe(w));
        return;
      }
      const H3Site s = sites[pick(rng, 0, sites.size() - 1)];
      const Nanoword v = apply_h3(w, s, false);
      if (!(apply_h3(v, s, true) == w)) fail(r, "inverse H3 does not undo H3 " + describe(w));
      // Either direction, chosen at random.
      if (pick(rng, 0, 1) == 0) {
        before = w;
        after = v;
      } else {
        before = v;
        after = w;
      }
      break;
    }
    default: {
      kind = "surgery";
      const std::size_t h = pick(rng, 1, 3);
      const Nanophrase v = random_even_symmetric_phrase(rng, alpha, h, pick(rng, 1, h));
      const EmbeddedFactor e = embed_phrase(rng, v, x);
      before = e.word;
      after = apply_surgery(before, e.factor);
      if (!isomorphic(after, x)) fail(r, "surgery does not recover the host word " + describe(before));
      break;
    }
  }
  ++r.cases;
  const std::string diff = compare(invariants_of(before, phis), invariants_of(after, phis), false);
  if (!diff.empty()) fail(r, kind + " changes " + diff + " on " + describe(before) + " -> " + describe(after));
}

std::vector<AlphaPairing> random_pairings(Rng& rng, const AlphabetPtr& alpha, std::size_t count) {
  std::vector<AlphaPairing> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(random_pairing(rng, alpha, pick(rng, 0, 3), 2));
  return out;
}

}  // namespace

SuiteResult surgery_suite(Rng& rng, std::size_t count) {
  return timed("surgery", [&](SuiteResult& r) {
    for (std::size_t c = 0; c < count; ++c) {
      const AlphabetPtr alpha = random_alphabet(rng, 3, 2);
      const std::size_t h = pick(rng, 1, 4);
      const Nanophrase v = random_even_symmetric_phrase(rng, alpha, h, pick(rng, 1, std::min<std::size_t>(h, 3)));
      const Nanoword rest = random_word(rng, alpha, pick(rng, 0, 7 - h));
      const EmbeddedFactor e = embed_phrase(rng, v, rest);
      ++r.cases;
      std::string why;
      if (!verify_surgery_filling(e.word, e.factor, &why)) fail(r, describe(e.word) + ": " + why);
    }
  });
}

SuiteResult genus_rank_suite(std::size_t max_length) {
  return timed("genus-rank", [&](SuiteResult& r) {
    for (std::size_t h = 0; 2 * h <= max_length; ++h) {
      for_each_nanoword(h, sign_alphabet(), [&](const Nanoword& w) {
        ++r.cases;
        const SurfaceStats st = surface_stats(ribbon_graph_of(w));
        const std::size_t rank = tautological_rank(w);
        if (rank != 2 * static_cast<std::size_t>(st.genus)) {
          fail(r, describe(w) + ": rank " + std::to_string(rank) + " genus " + std::to_string(st.genus));
        }
        if (!w.empty() && st.euler != -static_cast<int>(h)) fail(r, describe(w) + ": wrong Euler characteristic");
      });
    }
  });
}

SuiteResult move_invariance_suite(Rng& rng, std::size_t count) {
  return timed("moves", [&](SuiteResult& r) {
    for (std::size_t c = 0; c < count; ++c) check_move_case(r, rng);
  });
}

SuiteResult shift_suite(Rng& rng, std::size_t count) {
  return timed("shift", [&](SuiteResult& r) {
    for (std::size_t c = 0; c < count; ++c) {
      const AlphabetPtr alpha = random_alphabet(rng, 3, 1);
      const auto phis = sign_battery(*alpha);
      const Nanoword w = random_word(rng, alpha, pick(rng, 1, 6));
      const Nanoword v = circular_shift(w);
      ++r.cases;
      const std::string diff = compare(invariants_of(w, phis), invariants_of(v, phis), true);
      if (!diff.empty()) fail(r, "shift changes " + diff + " on " + describe(w));
      const AlphaPairing shifted = m_shift(pairing_of_nanoword(w), w.at(0), 2);
      if (!pairing_isomorphism(shifted, pairing_of_nanoword(v))) {
        fail(r, "pairing of the shifted word is not the 2-shift on " + describe(w));
      }
      if (!(inverse_circular_shift(v) == w)) fail(r, "inverse shift does not undo shift on " + describe(w));
    }
  });
}

SuiteResult triangle_suite(Rng& rng, std::size_t count) {
  return timed("triangle", [&](SuiteResult& r) {
    std::size_t nontrivial = 0;
    for (std::size_t c = 0; c < count; ++c) {
      const AlphabetPtr alpha = random_alphabet(rng, 2, 1);
      const auto phis = sign_battery(*alpha);
      const auto p = random_pairings(rng, alpha, 3);
      const auto d12 = genera(sum_pairings(p[0], opposite_pairing(p[1])), phis);
      const auto d23 = genera(sum_pairings(p[1], opposite_pairing(p[2])), phis);
      const auto d13 = genera(sum_pairings(p[0], opposite_pairing(p[2])), phis);
      ++r.cases;
      for (std::size_t k = 0; k < phis.size(); ++k) {
        if (d13[k].twice_value > 0) ++nontrivial;
        if (d12[k].twice_value + d23[k].twice_value < d13[k].twice_value) {
          fail(r, "triangle inequality fails for " + phis[k].id(*alpha));
        }
      }
    }
    r.messages.push_back(std::to_string(nontrivial) + " checks with a positive right-hand side");
  });
}

SuiteResult subadditivity_suite(Rng& rng, std::size_t count) {
  return timed("subadditivity", [&](SuiteResult& r) {
    for (std::size_t c = 0; c < count; ++c) {
      const AlphabetPtr alpha = random_alphabet(rng, 2, 1);
      const auto phis = sign_battery(*alpha);
      const auto p = random_pairings(rng, alpha, 2);
      const auto g1 = genera(p[0], phis);
      const auto g2 = genera(p[1], phis);
      const auto g12 = genera(sum_pairings(p[0], p[1]), phis);
      ++r.cases;
      for (std::size_t k = 0; k < phis.size(); ++k) {
        if (g1[k].twice_value + g2[k].twice_value < g12[k].twice_value) {
          fail(r, "subadditivity fails for " + phis[k].id(*alpha));
        }
      }
    }
  });
}

SuiteResult sandwich_suite(Rng& rng, std::size_t count, int s_bound) {
  return timed("sandwich", [&](SuiteResult& r) {
    std::size_t strict = 0;
    for (std::size_t c = 0; c < count; ++c) {
      const AlphabetPtr alpha = random_alphabet(rng, 2, 1);
      const auto phis = sign_battery(*alpha);
      const auto p = random_pairings(rng, alpha, 2);
      const auto sum = genera(sum_pairings(p[0], p[1]), phis);
      const auto tuple = tuple_genera({p[0], p[1]}, phis, s_bound);
      ++r.cases;
      for (std::size_t k = 0; k < phis.size(); ++k) {
        if (tuple[k].twice_value < sum[k].twice_value) ++strict;
        // In units of half a genus: sum >= tuple >= sum - 2.
        if (tuple[k].twice_value > sum[k].twice_value || tuple[k].twice_value < sum[k].twice_value - 2) {
          fail(r, "sandwich fails for " + phis[k].id(*alpha) + ": sum " + std::to_string(sum[k].twice_value) +
                      " tuple " + std::to_string(tuple[k].twice_value));
        }
      }
    }
    r.messages.push_back(std::to_string(strict) + " checks where the tuple genus is below the sum");
  });
}

SuiteResult bridge_suite(Rng& rng, std::size_t words, int s_bound) {
  return timed("bridge", [&](SuiteResult& r) {
    Caps caps;
    caps.s_bound = s_bound;
    constexpr std::size_t kBatches = 4;
    int min_slack = 1 << 20;
    std::size_t bridges = 0;
    for (std::size_t b = 0; b < kBatches; ++b) {
      const std::size_t batch = words / kBatches + (b < words % kBatches ? 1 : 0);
      const AlphabetPtr alpha = random_alphabet(rng, 2, 0);
      const BridgeReport rep = bridge_inequality_suite(rng, batch, alpha, caps);
      r.cases += rep.checks;
      bridges += rep.bridges;
      if (rep.checks > 0) min_slack = std::min(min_slack, rep.min_slack);
      for (const auto& f : rep.failures) fail(r, f);
      r.failures += rep.violations - rep.failures.size();
    }
    r.messages.push_back(std::to_string(words) + " words, " + std::to_string(bridges) +
                         " bridges, min slack " + std::to_string(min_slack));
  });
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"surgery",       "genus-rank", "moves",    "shift",
                                                 "triangle",      "subadditivity", "sandwich", "bridge"};
  return names;
}

std::vector<SuiteResult> run_suites(const std::string& name, std::uint64_t seed, const SuiteSizes& sizes) {
  const auto& names = suite_names();
  if (name != "all" && std::find(names.begin(), names.end(), name) == names.end()) {
    throw std::invalid_argument("unknown suite '" + name + "'");
  }
  std::vector<SuiteResult> out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (name != "all" && name != names[i]) continue;
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(i)};
    Rng rng(seq);
    const std::string& n = names[i];
    if (n == "surgery") out.push_back(surgery_suite(rng, sizes.surgery));
    if (n == "genus-rank") out.push_back(genus_rank_suite(sizes.genus_rank_max_length));
    if (n == "moves") out.push_back(move_invariance_suite(rng, sizes.moves));
    if (n == "shift") out.push_back(shift_suite(rng, sizes.shifts));
    if (n == "triangle") out.push_back(triangle_suite(rng, sizes.triangle));
    if (n == "subadditivity") out.push_back(subadditivity_suite(rng, sizes.subadditivity));
    if (n == "sandwich") out.push_back(sandwich_suite(rng, sizes.sandwich, sizes.s_bound));
    if (n == "bridge") out.push_back(bridge_suite(rng, sizes.bridge_words, sizes.s_bound));
  }
  return out;
}

}  // namespace nanocob
