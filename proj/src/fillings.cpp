#include "nanocob/pairings.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace nanocob {

namespace {

PiElement bilinear_form(const AlphaPairing& p, const SVector& x, const SVector& y) {
  PiElement r;
  for (const auto& [i, a] : x.terms) {
    for (const auto& [j, b] : y.terms) {
      const PiElement& v = p.e(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
      if (!v.is_zero()) r += (a * b) * v;
    }
  }
  return r;
}

SVector pair_vector(int i, int j, std::int64_t cj) { return SVector{{{i, 1}, {j, cj}}}; }

// Admissible partners for a letter, in the order they are proposed.
struct Matcher {
  const InvolutiveAlphabet& ground;
  const std::vector<int>& proj;
  // Appends the short vectors joining a and b (basis offset applied).
  void options(int a, int b, int offset, std::vector<SVector>& out) const {
    const int pa = proj[a];
    const int pb = proj[b];
    if (pa == pb) out.push_back(pair_vector(a + offset, b + offset, 1));
    if (pa == ground.tau(pb)) out.push_back(pair_vector(a + offset, b + offset, -1));
  }
};

}  // namespace

PiElement bilinear(const AlphaPairing& p, const SVector& x, const SVector& y) {
  return bilinear_form(p, x, y);
}

PiElement bilinear(const TupleForm& t, const SVector& x, const SVector& y) {
  return bilinear_form(t.form, x, y);
}

bool is_short(const AlphaPairing& p, const SVector& x) {
  const auto& t = x.terms;
  if (t.size() == 1) return t[0].first > 0 && t[0].second == 1;
  if (t.size() != 2 || t[0].first <= 0 || t[1].first <= 0 || t[0].first == t[1].first) return false;
  const int pa = p.projection(t[0].first - 1);
  const int pb = p.projection(t[1].first - 1);
  const auto ca = t[0].second;
  const auto cb = t[1].second;
  if (ca == 1 && cb == 1) return pa == pb;
  if ((ca == 1 && cb == -1) || (ca == -1 && cb == 1)) return pa == p.ground().tau(pb);
  return false;
}

bool is_filling(const AlphaPairing& p, const Filling& f) {
  int s_count = 0;
  std::vector<int> seen(p.core_size(), 0);
  for (const auto& v : f) {
    if (v == SVector::basis(0)) {
      ++s_count;
      continue;
    }
    if (!is_short(p, v)) return false;
    for (const auto& [i, c] : v.terms) ++seen[static_cast<std::size_t>(i - 1)];
  }
  return s_count == 1 && std::all_of(seen.begin(), seen.end(), [](int k) { return k == 1; });
}

bool is_annihilating(const AlphaPairing& p, const Filling& f) {
  for (const auto& x : f) {
    for (const auto& y : f) {
      if (!bilinear_form(p, x, y).is_zero()) return false;
    }
  }
  return true;
}

std::string format_filling(const AlphaPairing& p, const Filling& f) {
  std::string out = "{";
  for (std::size_t k = 0; k < f.size(); ++k) {
    if (k > 0) out += ", ";
    bool first = true;
    for (const auto& [i, c] : f[k].terms) {
      if (c < 0) {
        out += "-";
      } else if (!first) {
        out += "+";
      }
      const auto mag = c < 0 ? -c : c;
      if (mag != 1) out += std::to_string(mag);
      out += i == 0 ? std::string("s") : p.names()[static_cast<std::size_t>(i - 1)];
      first = false;
    }
  }
  return out + "}";
}

void for_each_filling(const AlphaPairing& p, const std::function<bool(const Filling&)>& visit) {
  const int m = static_cast<int>(p.core_size());
  const Matcher matcher{p.ground(), p.projection()};
  std::vector<bool> used(static_cast<std::size_t>(m), false);
  Filling current{SVector::basis(0)};
  bool stop = false;
  std::function<void(int)> rec = [&](int from) {
    if (stop) return;
    int a = from;
    while (a < m && used[static_cast<std::size_t>(a)]) ++a;
    if (a == m) {
      if (!visit(current)) stop = true;
      return;
    }
    used[static_cast<std::size_t>(a)] = true;
    current.push_back(SVector::basis(a + 1));
    rec(a + 1);
    current.pop_back();
    std::vector<SVector> opts;
    for (int b = a + 1; b < m && !stop; ++b) {
      if (used[static_cast<std::size_t>(b)]) continue;
      opts.clear();
      matcher.options(a, b, 1, opts);
      for (const auto& v : opts) {
        used[static_cast<std::size_t>(b)] = true;
        current.push_back(v);
        rec(a + 1);
        current.pop_back();
        used[static_cast<std::size_t>(b)] = false;
        if (stop) break;
      }
    }
    used[static_cast<std::size_t>(a)] = false;
  };
  rec(0);
}

std::vector<Filling> enumerate_fillings(const AlphaPairing& p) {
  std::vector<Filling> out;
  for_each_filling(p, [&](const Filling& f) {
    out.push_back(f);
    return true;
  });
  return out;
}

namespace {

// Depth-first search for a family of vectors with all mutual values zero.
// candidates(a, used, out) lists the vectors that may cover letter a.
template <typename Candidates>
std::optional<Filling> annihilating_search(const AlphaPairing& form, std::size_t letters,
                                           std::size_t offset, Filling start, Candidates candidates) {
  for (const auto& x : start) {
    for (const auto& y : start) {
      if (!bilinear_form(form, x, y).is_zero()) return std::nullopt;
    }
  }
  std::vector<bool> used(letters, false);
  Filling current = std::move(start);
  std::optional<Filling> found;
  std::function<void(std::size_t)> rec = [&](std::size_t from) {
    std::size_t a = from;
    while (a < letters && used[a]) ++a;
    if (a == letters) {
      found = current;
      return;
    }
    std::vector<SVector> opts;
    candidates(a, used, opts);
    for (const auto& v : opts) {
      if (!bilinear_form(form, v, v).is_zero()) continue;
      bool ok = true;
      for (const auto& u : current) {
        if (!bilinear_form(form, u, v).is_zero() || !bilinear_form(form, v, u).is_zero()) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      std::vector<std::size_t> marked;
      for (const auto& [i, c] : v.terms) {
        if (static_cast<std::size_t>(i) >= offset) {
          const auto idx = static_cast<std::size_t>(i) - offset;
          used[idx] = true;
          marked.push_back(idx);
        }
      }
      current.push_back(v);
      rec(a + 1);
      current.pop_back();
      for (auto idx : marked) used[idx] = false;
      if (found) return;
    }
  };
  rec(0);
  return found;
}

}  // namespace

std::optional<Filling> is_hyperbolic(const AlphaPairing& p) {
  const Matcher matcher{p.ground(), p.projection()};
  const int m = static_cast<int>(p.core_size());
  return annihilating_search(
      p, p.core_size(), 1, Filling{SVector::basis(0)},
      [&](std::size_t a, const std::vector<bool>& used, std::vector<SVector>& out) {
        const int ai = static_cast<int>(a);
        out.push_back(SVector::basis(ai + 1));
        for (int b = ai + 1; b < m; ++b) {
          if (!used[static_cast<std::size_t>(b)]) matcher.options(ai, b, 1, out);
        }
      });
}

bool are_cobordant(const AlphaPairing& p1, const AlphaPairing& p2) {
  return is_hyperbolic(sum_pairings(p1, opposite_pairing(p2))).has_value();
}

// ------------------------------------------------------------------- genus

IntMatrix phi_matrix(const AlphaPairing& p, const PhiSpec& phi) {
  std::int64_t scale = 1;
  if (phi.field() == FieldKind::Rationals) {
    for (const auto& v : phi.values()) scale = std::lcm(scale, v.denominator());
  }
  IntMatrix m(p.dim(), p.dim());
  for (std::size_t i = 0; i < p.dim(); ++i) {
    for (std::size_t j = 0; j < p.dim(); ++j) {
      const Rational v = phi.apply(p.e(i, j)) * scale;
      m(i, j) = v.numerator();
    }
  }
  return m;
}

std::size_t gram_rank(const IntMatrix& phi_e, const PhiSpec& phi, const Filling& f) {
  IntMatrix g(f.size(), f.size());
  for (std::size_t a = 0; a < f.size(); ++a) {
    for (std::size_t b = 0; b < f.size(); ++b) {
      std::int64_t v = 0;
      for (const auto& [i, x] : f[a].terms) {
        for (const auto& [j, y] : f[b].terms) {
          v += x * y * phi_e(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
        }
      }
      g(a, b) = v;
    }
  }
  return phi.field() == FieldKind::Rationals ? rank_over_q(g) : rank_mod_p(g, phi.prime());
}

Genus genus_of_filling(const AlphaPairing& p, const PhiSpec& phi, const Filling& f) {
  return Genus{static_cast<int>(gram_rank(phi_matrix(p, phi), phi, f)), false};
}

std::vector<Genus> genera(const AlphaPairing& p, const std::vector<PhiSpec>& phis) {
  std::vector<IntMatrix> mats;
  for (const auto& phi : phis) mats.push_back(phi_matrix(p, phi));
  std::vector<int> best(phis.size(), -1);
  for_each_filling(p, [&](const Filling& f) {
    bool all_zero = true;
    for (std::size_t k = 0; k < phis.size(); ++k) {
      if (best[k] == 0) continue;
      const int r = static_cast<int>(gram_rank(mats[k], phis[k], f));
      if (best[k] < 0 || r < best[k]) best[k] = r;
      all_zero = all_zero && best[k] == 0;
    }
    return !all_zero;
  });
  std::vector<Genus> out;
  for (int b : best) out.push_back(Genus{b, false});
  return out;
}

Genus genus(const AlphaPairing& p, const PhiSpec& phi) { return genera(p, {phi}).front(); }

// ------------------------------------------------------------------ tuples

TupleForm tuple_form(const std::vector<AlphaPairing>& tuple) {
  if (tuple.empty()) throw std::invalid_argument("empty tuple of pairings");
  const std::size_t r = tuple.size();
  std::size_t letters = 0;
  for (const auto& p : tuple) letters += p.core_size();
  // The TupleForm keeps r distinguished rows; as an AlphaPairing it has one
  // s row, so the first r-1 distinguished elements are stored as pseudo
  // letters projected to symbol 0 and never offered to matchings.
  const std::size_t d = r + letters;
  std::vector<PiElement> e(d * d);
  std::vector<int> proj(d - 1, 0);
  std::vector<std::string> names;
  for (std::size_t t = 1; t < r; ++t) names.push_back("s" + std::to_string(t + 1));
  std::size_t base = r;
  for (std::size_t t = 0; t < r; ++t) {
    const auto& p = tuple[t];
    if (!(p.ground() == tuple[0].ground())) throw std::invalid_argument("ground alphabet mismatch");
    auto idx = [&](std::size_t i) { return i == 0 ? t : base + i - 1; };
    for (std::size_t i = 0; i < p.dim(); ++i) {
      for (std::size_t j = 0; j < p.dim(); ++j) e[idx(i) * d + idx(j)] = p.e(i, j);
    }
    for (std::size_t a = 0; a < p.core_size(); ++a) {
      proj[base + a - 1] = p.projection(static_cast<int>(a));
      names.push_back(p.names()[a] + "_" + std::to_string(t + 1));
    }
    base += p.core_size();
  }
  TupleForm out{AlphaPairing(tuple[0].ground_ptr(), std::move(proj), std::move(e), std::move(names)), r};
  return out;
}

namespace {

struct WeakSetup {
  TupleForm form;
  std::vector<int> letter_proj;  // projections of the real letters
  std::vector<int> free_s;       // s indices carrying searched coefficients
  SVector lambda0;
};

WeakSetup weak_setup(const std::vector<AlphaPairing>& tuple) {
  WeakSetup w{tuple_form(tuple), {}, {}, {}};
  const auto& f = w.form.form;
  const std::size_t r = w.form.distinguished;
  for (std::size_t i = r; i < f.dim(); ++i) w.letter_proj.push_back(f.projection(static_cast<int>(i - 1)));
  for (std::size_t t = 0; t < r; ++t) w.lambda0.terms.emplace_back(static_cast<int>(t), 1);
  // An s_t in the radical of the form contributes nothing to any Gram
  // matrix, so its coefficients are left at 0. Of the rest, the last one is
  // normalized to 0 by subtracting multiples of lambda0.
  std::vector<int> live;
  for (std::size_t t = 0; t < r; ++t) {
    bool radical = true;
    for (std::size_t j = 0; j < f.dim() && radical; ++j) {
      radical = f.e(t, j).is_zero() && f.e(j, t).is_zero();
    }
    if (!radical) live.push_back(static_cast<int>(t));
  }
  if (!live.empty()) live.pop_back();
  w.free_s = std::move(live);
  return w;
}

SVector with_s(const SVector& base, const std::vector<int>& free_s, const std::vector<int>& coeffs) {
  SVector v;
  for (std::size_t k = 0; k < free_s.size(); ++k) {
    if (coeffs[k] != 0) v.terms.emplace_back(free_s[k], coeffs[k]);
  }
  v.terms.insert(v.terms.end(), base.terms.begin(), base.terms.end());
  return v;
}

// Every coefficient vector in [-b, b]^n, in odometer order starting at 0.
std::vector<std::vector<int>> coefficient_choices(std::size_t n, int b) {
  std::vector<int> values{0};
  for (int c = 1; c <= b; ++c) {
    values.push_back(c);
    values.push_back(-c);
  }
  std::vector<std::vector<int>> out{{}};
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<std::vector<int>> next;
    for (const auto& prefix : out) {
      for (int v : values) {
        auto e = prefix;
        e.push_back(v);
        next.push_back(std::move(e));
      }
    }
    out = std::move(next);
  }
  return out;
}

// Combinatorial parts: partitions of the letters into singletons and
// admissible pairs, with letter indices shifted by offset.
void for_each_matching(const InvolutiveAlphabet& ground, const std::vector<int>& proj, int offset,
                       const std::function<bool(const std::vector<SVector>&)>& visit) {
  const int m = static_cast<int>(proj.size());
  const Matcher matcher{ground, proj};
  std::vector<bool> used(proj.size(), false);
  std::vector<SVector> current;
  bool stop = false;
  std::function<void(int)> rec = [&](int from) {
    if (stop) return;
    int a = from;
    while (a < m && used[static_cast<std::size_t>(a)]) ++a;
    if (a == m) {
      if (!visit(current)) stop = true;
      return;
    }
    used[static_cast<std::size_t>(a)] = true;
    current.push_back(SVector::basis(a + offset));
    rec(a + 1);
    current.pop_back();
    std::vector<SVector> opts;
    for (int b = a + 1; b < m && !stop; ++b) {
      if (used[static_cast<std::size_t>(b)]) continue;
      opts.clear();
      matcher.options(a, b, offset, opts);
      for (const auto& v : opts) {
        used[static_cast<std::size_t>(b)] = true;
        current.push_back(v);
        rec(a + 1);
        current.pop_back();
        used[static_cast<std::size_t>(b)] = false;
        if (stop) break;
      }
    }
    used[static_cast<std::size_t>(a)] = false;
  };
  rec(0);
}

void check_bound(int s_bound) {
  if (s_bound < 1) throw std::invalid_argument("s_bound must be at least 1");
}

}  // namespace

void for_each_weak_filling(const std::vector<AlphaPairing>& tuple, int s_bound,
                           const std::function<bool(const Filling&)>& visit) {
  check_bound(s_bound);
  const WeakSetup ws = weak_setup(tuple);
  const auto choices = coefficient_choices(ws.free_s.size(), s_bound);
  const int offset = static_cast<int>(ws.form.distinguished);
  bool stop = false;
  // First pass: all matchings with zero s-coefficients, which are exactly
  // the fillings of the direct sum. Second pass: the nonzero coefficients.
  for_each_matching(ws.form.form.ground(), ws.letter_proj, offset, [&](const std::vector<SVector>& base) {
    Filling f{ws.lambda0};
    f.insert(f.end(), base.begin(), base.end());
    stop = !visit(f);
    return !stop;
  });
  if (stop || ws.free_s.empty()) return;
  for_each_matching(ws.form.form.ground(), ws.letter_proj, offset, [&](const std::vector<SVector>& base) {
    // Odometer over one coefficient choice per vector, skipping all zeros.
    std::vector<std::size_t> digit(base.size(), 0);
    if (digit.empty()) return true;
    digit[0] = 1;
    while (true) {
      Filling f{ws.lambda0};
      for (std::size_t k = 0; k < base.size(); ++k) f.push_back(with_s(base[k], ws.free_s, choices[digit[k]]));
      if (!visit(f)) {
        stop = true;
        return false;
      }
      std::size_t k = 0;
      while (k < digit.size() && ++digit[k] == choices.size()) digit[k++] = 0;
      if (k == digit.size()) break;
    }
    return !stop;
  });
}

std::optional<Filling> is_hyperbolic_tuple(const std::vector<AlphaPairing>& tuple, int s_bound) {
  check_bound(s_bound);
  const WeakSetup ws = weak_setup(tuple);
  const auto choices = coefficient_choices(ws.free_s.size(), s_bound);
  const int offset = static_cast<int>(ws.form.distinguished);
  const Matcher matcher{ws.form.form.ground(), ws.letter_proj};
  const int m = static_cast<int>(ws.letter_proj.size());
  return annihilating_search(
      ws.form.form, ws.letter_proj.size(), ws.form.distinguished, Filling{ws.lambda0},
      [&](std::size_t a, const std::vector<bool>& used, std::vector<SVector>& out) {
        const int ai = static_cast<int>(a);
        std::vector<SVector> bases{SVector::basis(ai + offset)};
        for (int b = ai + 1; b < m; ++b) {
          if (!used[static_cast<std::size_t>(b)]) matcher.options(ai, b, offset, bases);
        }
        for (const auto& base : bases) {
          for (const auto& c : choices) out.push_back(with_s(base, ws.free_s, c));
        }
      });
}

bool weakly_cobordant(const AlphaPairing& p, const AlphaPairing& q, int s_bound) {
  return is_hyperbolic_tuple({p, opposite_pairing(q)}, s_bound).has_value();
}

std::vector<Genus> tuple_genera(const std::vector<AlphaPairing>& tuple, const std::vector<PhiSpec>& phis,
                                int s_bound) {
  const TupleForm tf = tuple_form(tuple);
  std::vector<IntMatrix> mats;
  for (const auto& phi : phis) mats.push_back(phi_matrix(tf.form, phi));
  std::vector<int> best(phis.size(), -1);
  std::size_t visited = 0;
  for_each_weak_filling(tuple, s_bound, [&](const Filling& f) {
    const bool shifted = std::any_of(f.begin() + 1, f.end(), [&](const SVector& v) {
      return static_cast<std::size_t>(v.terms.front().first) < tf.distinguished;
    });
    if (shifted && ++visited > kWeakFillingBudget) return false;
    bool all_zero = true;
    for (std::size_t k = 0; k < phis.size(); ++k) {
      if (best[k] == 0) continue;
      const int r = static_cast<int>(gram_rank(mats[k], phis[k], f));
      if (best[k] < 0 || r < best[k]) best[k] = r;
      all_zero = all_zero && best[k] == 0;
    }
    return !all_zero;
  });
  std::vector<Genus> out;
  for (int b : best) out.push_back(Genus{b, true});
  return out;
}

Genus tuple_genus(const std::vector<AlphaPairing>& tuple, const PhiSpec& phi, int s_bound) {
  return tuple_genera(tuple, {phi}, s_bound).front();
}

// --------------------------------------------------------- surgery filling

bool verify_surgery_filling(const Nanoword& w, const Factor& f, std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  const Nanophrase phrase = factor_phrase(w, f);
  if (!is_even(phrase)) return fail("factor is not even");
  const auto wit = symmetry_witness(phrase);
  if (!wit) return fail("factor is not symmetric");

  const AlphaPairing pw = pairing_of_nanoword(w);
  const Nanoword x = apply_surgery(w, f);
  const AlphaPairing big = sum_pairings(pw, opposite_pairing(pairing_of_nanoword(x)));
  const std::size_t m = w.letter_count();

  std::vector<bool> in_b(m, false);
  for (int a : f.letters) in_b[static_cast<std::size_t>(a)] = true;
  // Remaining letters keep their relative id order in x.
  std::vector<int> x_id(m, -1);
  int next = 0;
  for (std::size_t a = 0; a < m; ++a) {
    if (!in_b[a]) x_id[a] = next++;
  }

  std::vector<SVector> lambda_b;
  for (std::size_t i = 0; i < f.letters.size(); ++i) {
    const auto j = static_cast<std::size_t>(wit->iota[i]);
    if (j < i) continue;
    const int bi = f.letters[i] + 1;
    if (j == i) {
      lambda_b.push_back(SVector::basis(bi));
      continue;
    }
    const int bj = f.letters[j] + 1;
    const std::int64_t sign = wit->epsilon[i] ? -1 : 1;
    SVector v{{{bi, 1}, {bj, sign}}};
    std::sort(v.terms.begin(), v.terms.end());
    lambda_b.push_back(v);
  }

  const SVector s = SVector::basis(0);
  for (const auto& u : lambda_b) {
    for (const auto& v : lambda_b) {
      if (!bilinear(pw, u, v).is_zero()) return fail("e_w(lambda_B1, lambda_B2) != 0");
    }
    if (!bilinear(pw, u, s).is_zero() || !bilinear(pw, s, u).is_zero()) return fail("e_w(lambda_B, s) != 0");
    for (std::size_t c = 0; c < m; ++c) {
      if (in_b[c]) continue;
      const SVector cv = SVector::basis(static_cast<int>(c) + 1);
      if (!bilinear(pw, u, cv).is_zero() || !bilinear(pw, cv, u).is_zero()) {
        return fail("e_w(lambda_B, C) != 0");
      }
    }
  }

  Filling filling{s};
  for (std::size_t c = 0; c < m; ++c) {
    if (in_b[c]) continue;
    filling.push_back(SVector{{{static_cast<int>(c) + 1, 1}, {static_cast<int>(m) + 1 + x_id[c], 1}}});
  }
  filling.insert(filling.end(), lambda_b.begin(), lambda_b.end());
  if (!is_filling(big, filling)) return fail("constructed family is not a filling");
  if (!is_annihilating(big, filling)) return fail("constructed filling does not annihilate");
  return true;
}

}  // namespace nanocob
