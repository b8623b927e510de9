#include "nanocob/surfaces.hpp"

#include "nanocob/pairings.hpp"

#include <stdexcept>

namespace nanocob {

AlphabetPtr sign_alphabet() {
  static const AlphabetPtr g = make_alphabet(InvolutiveAlphabet({"+", "-"}, {1, 0}));
  return g;
}

namespace {

void require_sign_ground(const Nanoword& w) {
  const auto& g = w.ground();
  if (g.size() != 2 || g.tau(0) != 1) {
    throw std::invalid_argument("surfaces need a two-symbol alphabet with swapped symbols");
  }
}

}  // namespace

RibbonGraph ribbon_graph_of(const Nanoword& w) {
  require_sign_ground(w);
  RibbonGraph r;
  if (w.empty()) {
    r.annulus = true;
    return r;
  }
  const std::size_t n = w.length();
  const auto in = [](std::size_t p) { return static_cast<int>(2 * p); };
  const auto out = [](std::size_t p) { return static_cast<int>(2 * p + 1); };
  r.edge_mate.assign(2 * n, -1);
  for (std::size_t p = 0; p < n; ++p) {
    const std::size_t q = (p + 1) % n;
    r.edge_mate[static_cast<std::size_t>(out(p))] = in(q);
    r.edge_mate[static_cast<std::size_t>(in(q))] = out(p);
  }
  r.sign.resize(w.letter_count());
  r.rotation.assign(2 * n, -1);
  for (std::size_t a = 0; a < w.letter_count(); ++a) {
    const int sgn = w.ground().sign(w.projection(static_cast<int>(a)));
    r.sign[a] = sgn;
    const auto [p, q] = w.positions(static_cast<int>(a));
    // Counterclockwise at a positive crossing: first-in, second-in,
    // first-out, second-out.
    std::vector<int> cyc = {in(p), in(q), out(p), out(q)};
    if (sgn < 0) cyc = {in(p), out(q), out(p), in(q)};
    for (std::size_t i = 0; i < 4; ++i) r.rotation[static_cast<std::size_t>(cyc[i])] = cyc[(i + 1) % 4];
  }
  return r;
}

SurfaceStats surface_stats(const RibbonGraph& g) {
  SurfaceStats st;
  if (g.annulus) {
    st.euler = 0;
    st.boundary_components = 2;
    st.genus = 0;
    return st;
  }
  const std::size_t darts = g.edge_mate.size();
  std::vector<bool> seen(darts, false);
  for (std::size_t d = 0; d < darts; ++d) {
    if (seen[d]) continue;
    ++st.boundary_components;
    for (std::size_t x = d; !seen[x];) {
      seen[x] = true;
      x = static_cast<std::size_t>(g.rotation[static_cast<std::size_t>(g.edge_mate[x])]);
    }
  }
  st.euler = static_cast<int>(g.vertex_count()) - static_cast<int>(g.edge_count());
  st.genus = (2 - st.euler - st.boundary_components) / 2;
  return st;
}

std::size_t tautological_rank(const Nanoword& w) {
  require_sign_ground(w);
  const AlphaPairing p = pairing_of_nanoword(w);
  const PhiSpec phi = PhiSpec::rational(w.ground(), {Rational(1)});
  return rank_over_q(phi_matrix(p, phi));
}

bool genus_rank_check(const Nanoword& w) {
  return tautological_rank(w) == 2 * static_cast<std::size_t>(surface_stats(ribbon_graph_of(w)).genus);
}

}  // namespace nanocob
