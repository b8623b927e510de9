#include "nanocob/pairings.hpp"

#include <algorithm>
#include <stdexcept>

namespace nanocob {

AlphaPairing::AlphaPairing(AlphabetPtr ground, std::vector<int> projection,
                           std::vector<PiElement> matrix, std::vector<std::string> names)
    : ground_(std::move(ground)),
      projection_(std::move(projection)),
      matrix_(std::move(matrix)),
      names_(std::move(names)) {
  if (!ground_) throw std::invalid_argument("missing ground alphabet");
  const std::size_t d = dim();
  if (matrix_.size() != d * d) throw std::invalid_argument("pairing matrix has wrong size");
  for (int s : projection_) {
    if (s < 0 || s >= static_cast<int>(ground_->size())) {
      throw std::invalid_argument("projection outside the ground alphabet");
    }
  }
  if (names_.empty()) {
    for (std::size_t i = 0; i < projection_.size(); ++i) names_.push_back("L" + std::to_string(i + 1));
  }
  if (names_.size() != projection_.size()) throw std::invalid_argument("name table size mismatch");
}

AlphaPairing AlphaPairing::trivial(AlphabetPtr ground) {
  return AlphaPairing(std::move(ground), {}, {PiElement()});
}

AlphaPairing AlphaPairing::point(AlphabetPtr ground, PiElement r) {
  return AlphaPairing(std::move(ground), {}, {std::move(r)});
}

bool AlphaPairing::is_skew_symmetric() const {
  for (std::size_t i = 0; i < dim(); ++i) {
    if (!e(i, i).is_zero()) return false;
    for (std::size_t j = i + 1; j < dim(); ++j) {
      if (e(i, j) != -e(j, i)) return false;
    }
  }
  return true;
}

namespace {

std::vector<PiElement> letter_values(const Nanoword& w) {
  std::vector<PiElement> v;
  v.reserve(w.letter_count());
  for (int s : w.projection()) v.push_back(pi_of_letter(w.ground(), s));
  return v;
}

}  // namespace

AlphaPairing pairing_of_nanoword(const Nanoword& w) {
  const std::size_t m = w.letter_count();
  const std::size_t d = m + 1;
  const auto val = letter_values(w);
  std::vector<std::size_t> first(m);
  std::vector<std::size_t> last(m);
  for (std::size_t a = 0; a < m; ++a) std::tie(first[a], last[a]) = w.positions(static_cast<int>(a));

  // n(A,B) = +1 for ..A..B..A..B.., -1 for ..B..A..B..A.., else 0.
  auto n = [&](std::size_t a, std::size_t b) {
    if (first[a] < first[b] && first[b] < last[a] && last[a] < last[b]) return 1;
    if (first[b] < first[a] && first[a] < last[b] && last[b] < last[a]) return -1;
    return 0;
  };
  // A o B: letters D with first entry strictly inside A's span and second
  // entry strictly inside B's span.
  auto circ = [&](std::size_t a, std::size_t b) {
    PiElement x;
    for (std::size_t dd = 0; dd < m; ++dd) {
      if (first[a] < first[dd] && first[dd] < last[a] && first[b] < last[dd] && last[dd] < last[b]) {
        x += val[dd];
      }
    }
    return x;
  };

  std::vector<PiElement> e(d * d);
  for (std::size_t a = 0; a < m; ++a) {
    PiElement as;
    for (std::size_t dd = 0; dd < m; ++dd) as += static_cast<std::int64_t>(n(a, dd)) * val[dd];
    e[(a + 1) * d] = as;
    e[a + 1] = -as;
    for (std::size_t b = 0; b < m; ++b) {
      if (a == b) continue;
      e[(a + 1) * d + b + 1] = 2 * (circ(a, b) - circ(b, a)) +
                               static_cast<std::int64_t>(n(a, b)) * (val[a] + val[b]);
    }
  }
  return AlphaPairing(w.ground_ptr(), w.projection(), std::move(e), w.names());
}

AlphaPairing pairing_of_nanoword_alt(const Nanoword& w) {
  const std::size_t m = w.letter_count();
  const std::size_t d = m + 1;
  const auto val = letter_values(w);
  // <x,y> over open gaps (lo, hi): letters with one entry in each gap.
  using Gap = std::pair<std::ptrdiff_t, std::ptrdiff_t>;
  auto inside = [](std::size_t p, Gap gap) {
    const auto q = static_cast<std::ptrdiff_t>(p);
    return gap.first < q && q < gap.second;
  };
  auto meet = [&](Gap x, Gap y) {
    PiElement r;
    for (std::size_t dd = 0; dd < m; ++dd) {
      auto [p, q] = w.positions(static_cast<int>(dd));
      if ((inside(p, x) && inside(q, y)) || (inside(p, y) && inside(q, x))) r += val[dd];
    }
    return r;
  };
  auto gap = [](std::size_t lo, std::size_t hi) {
    return Gap{static_cast<std::ptrdiff_t>(lo), static_cast<std::ptrdiff_t>(hi)};
  };

  std::vector<PiElement> e(d * d);
  for (std::size_t a = 0; a < m; ++a) {
    auto [ia, ja] = w.positions(static_cast<int>(a));
    // w = x A y A z
    const Gap x{-1, static_cast<std::ptrdiff_t>(ia)};
    const Gap y = gap(ia, ja);
    const Gap z = gap(ja, w.length());
    PiElement as = meet(y, z) - meet(x, y);
    e[(a + 1) * d] = as;
    e[a + 1] = -as;
  }
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      auto [ia, ja] = w.positions(static_cast<int>(a));
      auto [ib, jb] = w.positions(static_cast<int>(b));
      if (a == b || ib < ia) continue;
      PiElement v;
      if (ja < ib) {
        v = 2 * meet(gap(ia, ja), gap(ib, jb));  // A x A y B z B
      } else if (jb < ja) {
        // A x B y B z A
        v = 2 * meet(gap(ia, ib), gap(ib, jb)) - 2 * meet(gap(ib, jb), gap(jb, ja));
      } else {
        // A x B y A z B
        const Gap gx = gap(ia, ib);
        const Gap gy = gap(ib, ja);
        const Gap gz = gap(ja, jb);
        v = 2 * meet(gx, gy) + 2 * meet(gx, gz) + 2 * meet(gy, gz) + val[a] + val[b];
      }
      e[(a + 1) * d + b + 1] = v;
      e[(b + 1) * d + a + 1] = -v;
    }
  }
  return AlphaPairing(w.ground_ptr(), w.projection(), std::move(e), w.names());
}

AlphaPairing opposite_pairing(const AlphaPairing& p) {
  std::vector<PiElement> e;
  e.reserve(p.dim() * p.dim());
  for (std::size_t i = 0; i < p.dim(); ++i) {
    for (std::size_t j = 0; j < p.dim(); ++j) e.push_back(-p.e(i, j));
  }
  return AlphaPairing(p.ground_ptr(), p.projection(), std::move(e), p.names());
}

AlphaPairing sum_pairings(const AlphaPairing& p1, const AlphaPairing& p2) {
  if (!(p1.ground() == p2.ground())) throw std::invalid_argument("ground alphabet mismatch");
  const std::size_t m1 = p1.core_size();
  const std::size_t d = m1 + p2.core_size() + 1;
  std::vector<PiElement> e(d * d);
  e[0] = p1.e(0, 0) + p2.e(0, 0);
  for (std::size_t i = 1; i <= m1; ++i) {
    e[i * d] = p1.e(i, 0);
    e[i] = p1.e(0, i);
    for (std::size_t j = 1; j <= m1; ++j) e[i * d + j] = p1.e(i, j);
  }
  for (std::size_t i = 1; i <= p2.core_size(); ++i) {
    const std::size_t I = i + m1;
    e[I * d] = p2.e(i, 0);
    e[I] = p2.e(0, i);
    for (std::size_t j = 1; j <= p2.core_size(); ++j) e[I * d + j + m1] = p2.e(i, j);
  }
  std::vector<int> proj = p1.projection();
  proj.insert(proj.end(), p2.projection().begin(), p2.projection().end());
  std::vector<std::string> names = p1.names();
  for (const auto& n : p2.names()) names.push_back(n + "'");
  return AlphaPairing(p1.ground_ptr(), std::move(proj), std::move(e), std::move(names));
}

PiElement r_of(const AlphaPairing& p) { return p.e(0, 0); }

std::optional<std::vector<int>> pairing_isomorphism(const AlphaPairing& p, const AlphaPairing& q) {
  if (p.core_size() != q.core_size() || p.e(0, 0) != q.e(0, 0)) return std::nullopt;
  const std::size_t m = p.core_size();
  std::vector<int> f(m, -1);
  std::vector<bool> used(m, false);
  std::function<bool(std::size_t)> extend = [&](std::size_t a) {
    if (a == m) return true;
    const std::size_t A = a + 1;
    for (std::size_t b = 0; b < m; ++b) {
      if (used[b] || q.projection(static_cast<int>(b)) != p.projection(static_cast<int>(a))) continue;
      const std::size_t B = b + 1;
      if (p.e(A, 0) != q.e(B, 0) || p.e(0, A) != q.e(0, B) || p.e(A, A) != q.e(B, B)) continue;
      bool ok = true;
      for (std::size_t c = 0; c < a && ok; ++c) {
        const std::size_t C = c + 1;
        const std::size_t FC = static_cast<std::size_t>(f[c]) + 1;
        ok = p.e(A, C) == q.e(B, FC) && p.e(C, A) == q.e(FC, B);
      }
      if (!ok) continue;
      f[a] = static_cast<int>(b);
      used[b] = true;
      if (extend(a + 1)) return true;
      used[b] = false;
    }
    f[a] = -1;
    return false;
  };
  if (!extend(0)) return std::nullopt;
  return f;
}

std::string format_pairing(const AlphaPairing& p) {
  std::vector<std::string> labels{"s"};
  for (const auto& n : p.names()) labels.push_back(n);
  std::vector<std::vector<std::string>> cells(p.dim());
  std::size_t width = 1;
  for (const auto& l : labels) width = std::max(width, l.size());
  for (std::size_t i = 0; i < p.dim(); ++i) {
    for (std::size_t j = 0; j < p.dim(); ++j) {
      cells[i].push_back(format_pi(p.ground(), p.e(i, j)));
      width = std::max(width, cells[i].back().size());
    }
  }
  auto pad = [&](const std::string& s) { return std::string(width - s.size(), ' ') + s; };
  std::size_t label_width = 1;
  for (const auto& l : labels) label_width = std::max(label_width, l.size());
  std::string out(label_width, ' ');
  for (const auto& l : labels) out += "  " + pad(l);
  out += '\n';
  for (std::size_t i = 0; i < p.dim(); ++i) {
    out += labels[i] + std::string(label_width - labels[i].size(), ' ');
    for (const auto& c : cells[i]) out += "  " + pad(c);
    out += '\n';
  }
  return out;
}

// ------------------------------------------------------------------ u-poly

namespace {

bool self_negative(const PiElement& g) { return g == -g; }

// Representative of {g, -g} whose first free coefficient is positive, and
// the sign relating it to g.
std::pair<PiElement, int> canonical_monomial(const PiElement& g) {
  for (const auto& t : g.terms()) {
    if (!t.torsion) return t.coeff > 0 ? std::pair{g, 1} : std::pair{-g, -1};
  }
  return {g, 1};
}

void normalize(UPoly& u) {
  for (std::size_t o = 0; o < u.orbits.size(); ++o) {
    auto& terms = u.orbits[o];
    for (auto it = terms.begin(); it != terms.end();) {
      if (u.fixed[o] || self_negative(it->first)) it->second = ((it->second % 2) + 2) % 2;
      it = it->second == 0 ? terms.erase(it) : std::next(it);
    }
  }
}

UPoly empty_upoly(const InvolutiveAlphabet& ground) {
  UPoly u;
  u.orbits.resize(ground.orbits().size());
  for (const auto& o : ground.orbits()) u.fixed.push_back(o.kind == OrbitKind::Fixed);
  return u;
}

}  // namespace

bool UPoly::is_zero() const {
  return std::all_of(orbits.begin(), orbits.end(), [](const auto& t) { return t.empty(); });
}

UPoly UPoly::operator-() const {
  UPoly r = *this;
  for (std::size_t o = 0; o < r.orbits.size(); ++o) {
    if (r.fixed[o]) continue;
    for (auto& [g, c] : r.orbits[o]) c = -c;
  }
  normalize(r);
  return r;
}

UPoly UPoly::operator+(const UPoly& other) const {
  if (fixed != other.fixed) throw std::invalid_argument("u-polynomials over different alphabets");
  UPoly r = *this;
  for (std::size_t o = 0; o < r.orbits.size(); ++o) {
    for (const auto& [g, c] : other.orbits[o]) r.orbits[o][g] += c;
  }
  normalize(r);
  return r;
}

UPoly u_polynomial(const AlphaPairing& p) {
  const auto& ground = p.ground();
  UPoly u = empty_upoly(ground);
  for (std::size_t a = 0; a < p.core_size(); ++a) {
    const PiElement& g = p.e(a + 1, 0);
    if (g.is_zero()) continue;
    const int sym = p.projection(static_cast<int>(a));
    const int o = ground.orbit_of(sym);
    auto [key, sign] = canonical_monomial(g);
    u.orbits[o][key] += static_cast<std::int64_t>(ground.sign(sym)) * sign;
  }
  normalize(u);
  return u;
}

UPoly u_polynomial_of_nanoword(const Nanoword& w) { return u_polynomial(pairing_of_nanoword(w)); }

std::int64_t u_degree(const UPoly& u, const InvolutiveAlphabet& ground, int symbol) {
  if (!ground.fixed_point_free()) {
    throw std::invalid_argument("degree needs a fixed-point-free involution");
  }
  std::int64_t deg = 0;
  for (const auto& [g, c] : u.orbits.at(ground.orbit_of(symbol))) deg = std::max(deg, g.free_degree());
  return deg;
}

std::string format_upoly(const UPoly& u, const InvolutiveAlphabet& ground) {
  std::string out;
  for (std::size_t o = 0; o < u.orbits.size(); ++o) {
    if (!out.empty()) out += "; ";
    out += "u(" + ground.name(ground.orbits()[o].representative) + ")=";
    if (u.orbits[o].empty()) {
      out += "0";
      continue;
    }
    bool first = true;
    for (const auto& [g, c] : u.orbits[o]) {
      std::int64_t k = c;
      if (k < 0) {
        out += first ? "-" : " - ";
        k = -k;
      } else if (!first) {
        out += " + ";
      }
      if (k != 1) out += std::to_string(k) + "*";
      out += "d[" + format_pi(ground, g) + "]";
      first = false;
    }
  }
  return out;
}

// ----------------------------------------------------------------- m-shift

AlphaPairing m_shift(const AlphaPairing& p, int letter, std::int64_t m) {
  if (!p.is_skew_symmetric()) throw std::invalid_argument("m-shift needs a skew-symmetric pairing");
  if (letter < 0 || letter >= static_cast<int>(p.core_size())) throw std::invalid_argument("unknown letter");
  const std::size_t a = static_cast<std::size_t>(letter) + 1;
  AlphaPairing r = p;
  for (std::size_t b = 0; b < p.dim(); ++b) {
    if (b == a) continue;
    PiElement v = m * p.e(0, b) - p.e(a, b);
    r.at(a, b) = v;
    r.at(b, a) = -v;
  }
  std::vector<int> proj = p.projection();
  proj[letter] = p.ground().tau(proj[letter]);
  std::vector<std::string> names = p.names();
  names[letter] += "'";
  std::vector<PiElement> e;
  for (std::size_t i = 0; i < r.dim(); ++i) {
    for (std::size_t j = 0; j < r.dim(); ++j) e.push_back(r.e(i, j));
  }
  return AlphaPairing(p.ground_ptr(), std::move(proj), std::move(e), std::move(names));
}

// ---------------------------------------------------------------- covering

bool in_subgroup(const InvolutiveAlphabet& ground, const std::vector<PiElement>& gens, const PiElement& x) {
  const std::size_t k = ground.orbits().size();
  IntegerLattice lattice(k);
  auto embed = [&](const PiElement& g) {
    std::vector<std::int64_t> v(k, 0);
    for (const auto& t : g.terms()) v.at(t.orbit) = t.coeff;
    return v;
  };
  for (const auto& g : gens) lattice.add_generator(embed(g));
  // Torsion coordinates live in Z/2: add 2e_t.
  for (std::size_t o = 0; o < k; ++o) {
    if (ground.orbits()[o].kind == OrbitKind::Fixed) {
      std::vector<std::int64_t> v(k, 0);
      v[o] = 2;
      lattice.add_generator(std::move(v));
    }
  }
  return lattice.contains(embed(x));
}

Nanoword covering(const Nanoword& w, const CoveringSpec& h) {
  const auto& ground = w.ground();
  if (h.generators.size() != ground.orbits().size()) {
    throw std::invalid_argument("covering needs a subgroup for every orbit");
  }
  const AlphaPairing p = pairing_of_nanoword(w);
  std::vector<bool> doomed(w.letter_count());
  for (std::size_t a = 0; a < w.letter_count(); ++a) {
    const int o = ground.orbit_of(w.projection(static_cast<int>(a)));
    doomed[a] = !in_subgroup(ground, h.generators[o], p.e(a + 1, 0));
  }
  return delete_letters(w, doomed);
}

}  // namespace nanocob
