#include "nanocob/moves.hpp"

#include "nanocob/pairings.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace nanocob {

// ----------------------------------------------------------------- factors

Nanophrase factor_phrase(const Nanoword& w, const Factor& f) {
  std::size_t prev_end = 0;
  for (std::size_t r = 0; r < f.segments.size(); ++r) {
    const auto& seg = f.segments[r];
    if (seg.begin >= seg.end) throw std::invalid_argument("empty or reversed segment");
    if (seg.end > w.length()) throw std::invalid_argument("segment outside the word");
    if (r > 0 && seg.begin < prev_end) throw std::invalid_argument("segments overlap or are out of order");
    prev_end = seg.end;
  }
  std::vector<int> local(w.letter_count(), -1);
  for (std::size_t i = 0; i < f.letters.size(); ++i) {
    const int a = f.letters[i];
    if (a < 0 || a >= static_cast<int>(w.letter_count())) throw std::invalid_argument("unknown letter");
    if (i > 0 && f.letters[i - 1] >= a) throw std::invalid_argument("factor letters must be sorted");
    local[static_cast<std::size_t>(a)] = static_cast<int>(i);
  }
  std::vector<std::vector<int>> words;
  std::size_t covered = 0;
  for (const auto& seg : f.segments) {
    std::vector<int> v;
    for (std::size_t p = seg.begin; p < seg.end; ++p) {
      const int l = local[static_cast<std::size_t>(w.at(p))];
      if (l < 0) throw std::invalid_argument("segment contains a letter outside the factor");
      v.push_back(l);
    }
    covered += v.size();
    words.push_back(std::move(v));
  }
  if (covered != 2 * f.letters.size()) throw std::invalid_argument("factor letter has an entry outside the segments");
  std::vector<int> proj;
  std::vector<std::string> names;
  for (int a : f.letters) {
    proj.push_back(w.projection(a));
    names.push_back(w.name(a));
  }
  return Nanophrase(w.ground_ptr(), std::move(words), std::move(proj), std::move(names));
}

Factor factor_from_segments(const Nanoword& w, std::vector<Segment> segments) {
  Factor f;
  for (const auto& seg : segments) {
    for (std::size_t p = seg.begin; p < seg.end && p < w.length(); ++p) f.letters.push_back(w.at(p));
  }
  std::sort(f.letters.begin(), f.letters.end());
  f.letters.erase(std::unique(f.letters.begin(), f.letters.end()), f.letters.end());
  f.segments = std::move(segments);
  factor_phrase(w, f);
  return f;
}

bool is_even_symmetric(const Nanoword& w, const Factor& f) {
  const Nanophrase v = factor_phrase(w, f);
  return is_even(v) && symmetry_witness(v).has_value();
}

// ---------------------------------------------------------- homotopy moves

std::vector<std::size_t> find_h1_sites(const Nanoword& w) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i + 1 < w.length(); ++i) {
    if (w.at(i) == w.at(i + 1)) out.push_back(i);
  }
  return out;
}

namespace {

Nanoword delete_set(const Nanoword& w, std::initializer_list<int> letters) {
  std::vector<bool> doomed(w.letter_count(), false);
  for (int a : letters) doomed[static_cast<std::size_t>(a)] = true;
  return delete_letters(w, doomed);
}

std::size_t other_entry(const Nanoword& w, std::size_t p) {
  auto [a, b] = w.positions(w.at(p));
  return a == p ? b : a;
}

}  // namespace

Nanoword apply_h1(const Nanoword& w, std::size_t site) {
  if (site + 1 >= w.length() || w.at(site) != w.at(site + 1)) throw std::invalid_argument("no H1 site here");
  return delete_set(w, {w.at(site)});
}

std::vector<H2Site> find_h2_sites(const Nanoword& w) {
  std::vector<H2Site> out;
  const auto& g = w.ground();
  for (std::size_t i = 0; i + 1 < w.length(); ++i) {
    const int a = w.at(i);
    const int b = w.at(i + 1);
    if (a == b || w.projection(b) != g.tau(w.projection(a))) continue;
    const std::size_t j = other_entry(w, i + 1);
    if (j > i + 1 && j + 1 < w.length() && w.at(j + 1) == a) out.push_back({i, j});
  }
  return out;
}

Nanoword apply_h2(const Nanoword& w, const H2Site& site) {
  const auto sites = find_h2_sites(w);
  if (std::find(sites.begin(), sites.end(), site) == sites.end()) throw std::invalid_argument("no H2 site here");
  return delete_set(w, {w.at(site.i), w.at(site.i + 1)});
}

std::vector<H3Site> find_h3_sites(const Nanoword& w, bool inverse) {
  std::vector<H3Site> out;
  const std::size_t n = w.length();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const int x = w.at(i);
    const int y = w.at(i + 1);
    if (x == y || w.projection(x) != w.projection(y)) continue;
    std::size_t j = 0;
    std::size_t k = 0;
    if (!inverse) {
      // x=A, y=B: A B ... A C ... B C
      j = other_entry(w, i);
      if (j <= i + 1 || j + 1 >= n) continue;
      k = other_entry(w, i + 1);
      if (k <= j + 1 || k + 1 >= n || w.at(k + 1) != w.at(j + 1)) continue;
    } else {
      // x=B, y=A: B A ... C A ... C B
      const std::size_t ya = other_entry(w, i + 1);
      const std::size_t xb = other_entry(w, i);
      if (ya < 1 || xb < 1) continue;
      j = ya - 1;
      k = xb - 1;
      if (j <= i + 1 || k <= j + 1 || w.at(j) != w.at(k)) continue;
    }
    const int c = inverse ? w.at(j) : w.at(j + 1);
    if (c == x || c == y || w.projection(c) != w.projection(x)) continue;
    out.push_back({i, j, k});
  }
  return out;
}

Nanoword apply_h3(const Nanoword& w, const H3Site& site, bool inverse) {
  const auto sites = find_h3_sites(w, inverse);
  if (std::find(sites.begin(), sites.end(), site) == sites.end()) throw std::invalid_argument("no H3 site here");
  std::vector<int> seq = w.sequence();
  for (std::size_t p : {site.i, site.j, site.k}) std::swap(seq[p], seq[p + 1]);
  return Nanoword(w.ground_ptr(), std::move(seq), w.projection(), w.names());
}

// ------------------------------------------------------------- enumeration

namespace {

// Calls visit for every subset of letters of size 1..max_letters.
void for_each_subset(std::size_t m, int max_letters, const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int from) {
    if (!cur.empty()) visit(cur);
    if (static_cast<int>(cur.size()) >= max_letters) return;
    for (int a = from; a < static_cast<int>(m); ++a) {
      cur.push_back(a);
      rec(a + 1);
      cur.pop_back();
    }
  };
  rec(0);
}

// Maximal runs of positions whose letters lie in the subset.
std::vector<Segment> runs_of(const Nanoword& w, const std::vector<int>& letters) {
  std::vector<bool> in(w.letter_count(), false);
  for (int a : letters) in[static_cast<std::size_t>(a)] = true;
  std::vector<Segment> runs;
  for (std::size_t p = 0; p < w.length(); ++p) {
    if (!in[static_cast<std::size_t>(w.at(p))]) continue;
    if (!runs.empty() && runs.back().end == p) {
      runs.back().end = p + 1;
    } else {
      runs.push_back({p, p + 1});
    }
  }
  return runs;
}

// Every way of cutting the runs into at most max_k segments. With even_only,
// each piece must have even length.
void for_each_segmentation(const std::vector<Segment>& runs, int max_k, bool even_only,
                           const std::function<void(const std::vector<Segment>&)>& visit) {
  if (static_cast<int>(runs.size()) > max_k) return;
  if (even_only) {
    for (const auto& r : runs) {
      if (r.size() % 2 != 0) return;
    }
  }
  std::vector<Segment> cur;
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t run, std::size_t start) {
    if (run == runs.size()) {
      visit(cur);
      return;
    }
    const Segment& r = runs[run];
    const std::size_t step = even_only ? 2 : 1;
    // Next piece starts at start and ends at e.
    for (std::size_t e = start + step; e <= r.end; e += step) {
      const int left = static_cast<int>(runs.size() - run - 1);
      if (static_cast<int>(cur.size()) + 1 + left > max_k) break;
      cur.push_back({start, e});
      if (e == r.end) {
        rec(run + 1, run + 1 < runs.size() ? runs[run + 1].begin : 0);
      } else {
        rec(run, e);
      }
      cur.pop_back();
    }
  };
  rec(0, runs.empty() ? 0 : runs[0].begin);
}

bool factor_less(const Factor& a, const Factor& b) {
  auto key = [](const Factor& f) {
    std::vector<std::size_t> k;
    for (const auto& s : f.segments) {
      k.push_back(s.begin);
      k.push_back(s.end);
    }
    return k;
  };
  return key(a) < key(b);
}

}  // namespace

std::vector<Factor> enumerate_even_symmetric_factors(const Nanoword& w, int max_letters, int max_k) {
  std::vector<Factor> out;
  if (max_letters <= 0 || max_k <= 0) return out;
  for_each_subset(w.letter_count(), max_letters, [&](const std::vector<int>& letters) {
    for_each_segmentation(runs_of(w, letters), max_k, true, [&](const std::vector<Segment>& segs) {
      Factor f{letters, segs};
      if (symmetry_witness(factor_phrase(w, f))) out.push_back(std::move(f));
    });
  });
  std::stable_sort(out.begin(), out.end(), factor_less);
  return out;
}

Nanoword apply_surgery(const Nanoword& w, const Factor& f) {
  if (!is_even_symmetric(w, f)) throw std::invalid_argument("factor is not even and symmetric");
  std::vector<bool> doomed(w.letter_count(), false);
  for (int a : f.letters) doomed[static_cast<std::size_t>(a)] = true;
  return delete_letters(w, doomed);
}

// ----------------------------------------------------------------- bridges

std::optional<Bridge> validate_bridge(const Nanoword& w, const Factor& f, const std::vector<int>& kappa) {
  const Nanophrase v = factor_phrase(w, f);
  const std::size_t k = v.word_count();
  if (kappa.size() != k) throw std::invalid_argument("kappa must act on every segment");
  for (std::size_t r = 0; r < k; ++r) {
    if (kappa[r] < 0 || kappa[r] >= static_cast<int>(k) || kappa[static_cast<std::size_t>(kappa[r])] != static_cast<int>(r)) {
      throw std::invalid_argument("kappa is not an involution");
    }
  }
  const auto& words = v.words();
  std::vector<std::size_t> offset(k + 1, 0);
  for (std::size_t r = 0; r < k; ++r) offset[r + 1] = offset[r] + words[r].size();
  for (std::size_t r = 0; r < k; ++r) {
    const auto t = static_cast<std::size_t>(kappa[r]);
    if (words[r].size() != words[t].size()) return std::nullopt;
    if (t == r && words[r].size() % 2 != 0) return std::nullopt;
  }
  const std::size_t m = v.letter_count();
  // Entry (r, j) faces entry (kappa(r), n_r - 1 - j).
  std::vector<int> flat;
  for (const auto& word : words) flat.insert(flat.end(), word.begin(), word.end());
  auto facing = [&](std::size_t e) {
    const std::size_t r = static_cast<std::size_t>(std::upper_bound(offset.begin(), offset.end(), e) - offset.begin()) - 1;
    const std::size_t j = e - offset[r];
    const auto t = static_cast<std::size_t>(kappa[r]);
    return offset[t] + words[r].size() - 1 - j;
  };
  Bridge b;
  b.witness.iota.assign(m, -1);
  b.witness.epsilon.assign(m, 0);
  std::vector<std::size_t> leftmost(m, flat.size());
  for (std::size_t e = 0; e < flat.size(); ++e) {
    const auto a = static_cast<std::size_t>(flat[e]);
    leftmost[a] = std::min(leftmost[a], e);
    const int img = flat[facing(e)];
    if (b.witness.iota[a] == -1) {
      b.witness.iota[a] = img;
    } else if (b.witness.iota[a] != img) {
      return std::nullopt;
    }
  }
  const auto& g = w.ground();
  for (std::size_t a = 0; a < m; ++a) {
    const auto img = static_cast<std::size_t>(b.witness.iota[a]);
    if (static_cast<std::size_t>(b.witness.iota[img]) != a) return std::nullopt;
    const int eps = facing(leftmost[a]) == leftmost[img] ? 1 : 0;
    b.witness.epsilon[a] = eps;
    const int pa = v.projection()[a];
    if (v.projection()[img] != (eps ? g.tau(pa) : pa)) return std::nullopt;
  }
  b.factor = f;
  b.kappa = kappa;
  b.arches = 0;
  for (std::size_t r = 0; r < k; ++r) {
    if (kappa[r] > static_cast<int>(r)) ++b.arches;
  }
  return b;
}

int arches(const Bridge& b) { return b.arches; }

Nanoword apply_bridge(const Nanoword& w, const Bridge& b) {
  if (!validate_bridge(w, b.factor, b.kappa)) throw std::invalid_argument("not a bridge");
  std::vector<bool> doomed(w.letter_count(), false);
  for (int a : b.factor.letters) doomed[static_cast<std::size_t>(a)] = true;
  return delete_letters(w, doomed);
}

namespace {

void for_each_involution(std::size_t k, const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<int> kappa(k, -1);
  std::function<void()> rec = [&]() {
    std::size_t r = 0;
    while (r < k && kappa[r] != -1) ++r;
    if (r == k) {
      visit(kappa);
      return;
    }
    kappa[r] = static_cast<int>(r);
    rec();
    for (std::size_t t = r + 1; t < k; ++t) {
      if (kappa[t] != -1) continue;
      kappa[r] = static_cast<int>(t);
      kappa[t] = static_cast<int>(r);
      rec();
      kappa[t] = -1;
    }
    kappa[r] = -1;
  };
  rec();
}

}  // namespace

std::vector<Bridge> enumerate_bridges(const Nanoword& w, int max_letters, int max_k) {
  std::vector<Bridge> out;
  if (max_letters <= 0 || max_k <= 0) return out;
  for_each_subset(w.letter_count(), max_letters, [&](const std::vector<int>& letters) {
    for_each_segmentation(runs_of(w, letters), max_k, false, [&](const std::vector<Segment>& segs) {
      const Factor f{letters, segs};
      for_each_involution(segs.size(), [&](const std::vector<int>& kappa) {
        for (std::size_t r = 0; r < segs.size(); ++r) {
          const auto& t = segs[static_cast<std::size_t>(kappa[r])];
          if (segs[r].size() != t.size()) return;
        }
        if (auto b = validate_bridge(w, f, kappa)) out.push_back(std::move(*b));
      });
    });
  });
  std::stable_sort(out.begin(), out.end(), [](const Bridge& a, const Bridge& b) {
    if (factor_less(a.factor, b.factor)) return true;
    if (factor_less(b.factor, a.factor)) return false;
    return a.kappa < b.kappa;
  });
  return out;
}

// ------------------------------------------------------------------- moves

int arches(const Move& m) {
  if (m.kind != MoveKind::Bridge) return 0;
  int n = 0;
  for (std::size_t r = 0; r < m.kappa.size(); ++r) {
    if (m.kappa[r] > static_cast<int>(r)) ++n;
  }
  return n;
}

int Metamorphosis::total_arches() const {
  int n = 0;
  for (const auto& m : moves) n += arches(m);
  return n;
}

namespace {

// Inserts the phrase so that its words occupy the given segments of the
// result. Inserted letters get ids after the existing ones.
Nanoword insert_phrase(const Nanoword& w, const std::vector<Segment>& segs,
                       const std::vector<std::vector<int>>& inserted, const std::vector<int>& proj) {
  if (segs.size() != inserted.size()) throw std::invalid_argument("segment count does not match inserted phrase");
  std::size_t added = 0;
  for (std::size_t r = 0; r < segs.size(); ++r) {
    if (segs[r].size() != inserted[r].size() || segs[r].size() == 0) {
      throw std::invalid_argument("segment length does not match inserted word");
    }
    if (r > 0 && segs[r].begin < segs[r - 1].end) throw std::invalid_argument("segments overlap or are out of order");
    added += inserted[r].size();
  }
  const std::size_t total = w.length() + added;
  if (!segs.empty() && segs.back().end > total) throw std::invalid_argument("segment outside the result");
  const int m = static_cast<int>(w.letter_count());
  std::vector<int> seq;
  std::size_t src = 0;
  std::size_t r = 0;
  for (std::size_t p = 0; p < total;) {
    if (r < segs.size() && segs[r].begin == p) {
      for (int l : inserted[r]) {
        if (l < 0 || l >= static_cast<int>(proj.size())) throw std::invalid_argument("inserted letter without projection");
        seq.push_back(m + l);
      }
      p = segs[r].end;
      ++r;
    } else {
      seq.push_back(w.at(src++));
      ++p;
    }
  }
  std::vector<int> projection = w.projection();
  projection.insert(projection.end(), proj.begin(), proj.end());
  std::vector<std::string> names = w.names();
  int fresh = 1;
  for (std::size_t l = 0; l < proj.size(); ++l) {
    std::string n;
    do {
      n = "N" + std::to_string(fresh++);
    } while (std::find(names.begin(), names.end(), n) != names.end());
    names.push_back(n);
  }
  return Nanoword(w.ground_ptr(), std::move(seq), std::move(projection), std::move(names));
}

Factor inserted_factor(const Nanoword& result, const std::vector<Segment>& segs) {
  return factor_from_segments(result, segs);
}

std::string join_segments(const std::vector<Segment>& segs) {
  std::string out;
  for (const auto& s : segs) {
    if (!out.empty()) out += ',';
    out += std::to_string(s.begin) + "-" + std::to_string(s.end);
  }
  return out;
}

std::string join_sites(const std::vector<std::size_t>& sites) {
  std::string out;
  for (auto s : sites) {
    if (!out.empty()) out += ',';
    out += std::to_string(s);
  }
  return out;
}

std::string format_inserted(const InvolutiveAlphabet& g, const Move& m) {
  std::string phrase;
  for (std::size_t r = 0; r < m.inserted.size(); ++r) {
    if (r > 0) phrase += '|';
    for (std::size_t i = 0; i < m.inserted[r].size(); ++i) {
      if (i > 0) phrase += '.';
      phrase += "N" + std::to_string(m.inserted[r][i] + 1);
    }
  }
  std::string proj;
  for (std::size_t l = 0; l < m.inserted_proj.size(); ++l) {
    if (l > 0) proj += ',';
    proj += "N" + std::to_string(l + 1) + ":" + g.name(m.inserted_proj[l]);
  }
  return " phrase=" + phrase + " proj=" + proj;
}

}  // namespace

Nanoword apply_move(const Nanoword& w, const Move& m) {
  const auto& g = w.ground();
  switch (m.kind) {
    case MoveKind::Iso:
      return w;
    case MoveKind::H1:
      if (m.sites.size() != 1) throw std::invalid_argument("H1 takes one site");
      if (!m.inverse) return apply_h1(w, m.sites[0]);
      if (m.inserted_proj.size() != 1) throw std::invalid_argument("inverse H1 needs a projection");
      return insert_phrase(w, {{m.sites[0], m.sites[0] + 2}}, {{0, 0}}, m.inserted_proj);
    case MoveKind::H2: {
      if (m.sites.size() != 2) throw std::invalid_argument("H2 takes two sites");
      if (!m.inverse) return apply_h2(w, {m.sites[0], m.sites[1]});
      if (m.inserted_proj.empty()) throw std::invalid_argument("inverse H2 needs a projection");
      const int a = m.inserted_proj[0];
      Nanoword r = insert_phrase(w, {{m.sites[0], m.sites[0] + 2}, {m.sites[1], m.sites[1] + 2}}, {{0, 1}, {1, 0}},
                                 {a, g.tau(a)});
      const auto sites = find_h2_sites(r);
      if (std::find(sites.begin(), sites.end(), H2Site{m.sites[0], m.sites[1]}) == sites.end()) {
        throw std::invalid_argument("inverse H2 does not produce an H2 site");
      }
      return r;
    }
    case MoveKind::H3:
      if (m.sites.size() != 3) throw std::invalid_argument("H3 takes three sites");
      return apply_h3(w, {m.sites[0], m.sites[1], m.sites[2]}, m.inverse);
    case MoveKind::Surgery: {
      if (!m.inverse) return apply_surgery(w, factor_from_segments(w, m.segments));
      Nanoword r = insert_phrase(w, m.segments, m.inserted, m.inserted_proj);
      if (!is_even_symmetric(r, inserted_factor(r, m.segments))) {
        throw std::invalid_argument("inserted phrase is not an even symmetric factor");
      }
      return r;
    }
    case MoveKind::Bridge: {
      if (!m.inverse) {
        auto b = validate_bridge(w, factor_from_segments(w, m.segments), m.kappa);
        if (!b) throw std::invalid_argument("not a bridge");
        return apply_bridge(w, *b);
      }
      Nanoword r = insert_phrase(w, m.segments, m.inserted, m.inserted_proj);
      if (!validate_bridge(r, inserted_factor(r, m.segments), m.kappa)) {
        throw std::invalid_argument("inserted phrase is not a bridge");
      }
      return r;
    }
    case MoveKind::Shift:
      return m.inverse ? inverse_circular_shift(w) : circular_shift(w);
  }
  throw std::logic_error("unhandled move kind");
}

std::string format_move(const Nanoword& before, const Move& m) {
  const auto& g = before.ground();
  const std::string inv = m.inverse ? "INV " : "";
  switch (m.kind) {
    case MoveKind::Iso:
      return "ISO";
    case MoveKind::H1:
      return inv + "H1@" + join_sites(m.sites) + (m.inverse ? " proj=" + g.name(m.inserted_proj.at(0)) : "");
    case MoveKind::H2:
      return inv + "H2@" + join_sites(m.sites) + (m.inverse ? " proj=" + g.name(m.inserted_proj.at(0)) : "");
    case MoveKind::H3:
      return inv + "H3@" + join_sites(m.sites);
    case MoveKind::Surgery:
    case MoveKind::Bridge: {
      std::string out = inv + (m.kind == MoveKind::Surgery ? "SURG" : "BRIDGE");
      if (!m.inverse) {
        const Factor f = factor_from_segments(before, m.segments);
        std::string letters;
        for (int a : f.letters) letters += (letters.empty() ? "" : ",") + before.name(a);
        out += " letters=" + letters;
      }
      out += " segs=" + join_segments(m.segments);
      if (m.kind == MoveKind::Bridge) {
        std::string k;
        for (int t : m.kappa) k += (k.empty() ? "" : ",") + std::to_string(t + 1);
        out += " kappa=" + k + " arches=" + std::to_string(arches(m));
      }
      if (m.inverse) out += format_inserted(g, m);
      return out;
    }
    case MoveKind::Shift:
      return inv + "SHIFT";
  }
  throw std::logic_error("unhandled move kind");
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(item);
  return out;
}

std::size_t to_index(const std::string& s) {
  std::size_t used = 0;
  unsigned long v = 0;
  try {
    v = std::stoul(s, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("bad number '" + s + "' in move");
  }
  if (used != s.size()) throw std::invalid_argument("bad number '" + s + "' in move");
  return v;
}

}  // namespace

Move parse_move(const std::string& line, const InvolutiveAlphabet& ground) {
  std::istringstream in(line);
  std::vector<std::string> toks;
  std::string t;
  while (in >> t) toks.push_back(t);
  if (toks.empty()) throw std::invalid_argument("empty move");
  Move m;
  std::size_t pos = 0;
  if (toks[0] == "INV") {
    m.inverse = true;
    ++pos;
  }
  if (pos >= toks.size()) throw std::invalid_argument("missing move kind");
  std::string head = toks[pos++];
  std::string sites;
  if (auto at = head.find('@'); at != std::string::npos) {
    sites = head.substr(at + 1);
    head = head.substr(0, at);
  }
  if (head == "ISO") m.kind = MoveKind::Iso;
  else if (head == "H1") m.kind = MoveKind::H1;
  else if (head == "H2") m.kind = MoveKind::H2;
  else if (head == "H3") m.kind = MoveKind::H3;
  else if (head == "SURG") m.kind = MoveKind::Surgery;
  else if (head == "BRIDGE") m.kind = MoveKind::Bridge;
  else if (head == "SHIFT") m.kind = MoveKind::Shift;
  else throw std::invalid_argument("unknown move '" + head + "'");
  for (const auto& s : split(sites, ',')) {
    if (!s.empty()) m.sites.push_back(to_index(s));
  }
  std::vector<std::string> local_names;
  auto local = [&](const std::string& n) {
    auto it = std::find(local_names.begin(), local_names.end(), n);
    if (it != local_names.end()) return static_cast<int>(it - local_names.begin());
    local_names.push_back(n);
    return static_cast<int>(local_names.size()) - 1;
  };
  std::string proj_text;
  for (; pos < toks.size(); ++pos) {
    const auto eq = toks[pos].find('=');
    if (eq == std::string::npos) throw std::invalid_argument("expected key=value in move, got '" + toks[pos] + "'");
    const std::string key = toks[pos].substr(0, eq);
    const std::string val = toks[pos].substr(eq + 1);
    if (key == "segs") {
      for (const auto& s : split(val, ',')) {
        const auto dash = s.find('-');
        if (dash == std::string::npos) throw std::invalid_argument("segment must be begin-end");
        m.segments.push_back({to_index(s.substr(0, dash)), to_index(s.substr(dash + 1))});
      }
    } else if (key == "kappa") {
      for (const auto& s : split(val, ',')) {
        const auto k = to_index(s);
        if (k == 0) throw std::invalid_argument("kappa is 1-based");
        m.kappa.push_back(static_cast<int>(k) - 1);
      }
    } else if (key == "phrase") {
      for (const auto& word : split(val, '|')) {
        std::vector<int> ids;
        for (const auto& n : split(word, '.')) ids.push_back(local(n));
        m.inserted.push_back(std::move(ids));
      }
    } else if (key == "proj") {
      proj_text = val;
    } else if (key == "letters" || key == "arches") {
      // informational
    } else {
      throw std::invalid_argument("unknown move field '" + key + "'");
    }
  }
  if (!proj_text.empty()) {
    if (m.kind == MoveKind::H1 || m.kind == MoveKind::H2) {
      m.inserted_proj.push_back(ground.index_of(proj_text));
    } else {
      m.inserted_proj.assign(local_names.size(), -1);
      for (const auto& item : split(proj_text, ',')) {
        const auto colon = item.find(':');
        if (colon == std::string::npos) throw std::invalid_argument("projection must be letter:symbol");
        const int l = local(item.substr(0, colon));
        if (l >= static_cast<int>(m.inserted_proj.size())) throw std::invalid_argument("projection for a letter not in the phrase");
        m.inserted_proj[static_cast<std::size_t>(l)] = ground.index_of(item.substr(colon + 1));
      }
      if (std::find(m.inserted_proj.begin(), m.inserted_proj.end(), -1) != m.inserted_proj.end()) {
        throw std::invalid_argument("projection missing for an inserted letter");
      }
    }
  }
  return m;
}

Nanoword replay(const Nanoword& w, const Metamorphosis& m) {
  Nanoword cur = w;
  for (const auto& mv : m.moves) cur = apply_move(cur, mv);
  return cur;
}

std::string format_log(const Nanoword& w, const Metamorphosis& m) {
  std::string out;
  Nanoword cur = w;
  for (const auto& mv : m.moves) {
    out += format_move(cur, mv) + "\n";
    cur = apply_move(cur, mv);
  }
  return out;
}

Metamorphosis parse_log(const std::string& text, const InvolutiveAlphabet& ground) {
  Metamorphosis m;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    m.moves.push_back(parse_move(line, ground));
  }
  return m;
}

namespace {

Move invert_step(const Nanoword& before, const Move& m) {
  Move r = m;
  r.inverse = !m.inverse;
  if (m.inverse) {
    r.inserted.clear();
    r.inserted_proj.clear();
    return r;
  }
  switch (m.kind) {
    case MoveKind::H1:
      r.inserted_proj = {before.projection(before.at(m.sites[0]))};
      break;
    case MoveKind::H2:
      r.inserted_proj = {before.projection(before.at(m.sites[0]))};
      break;
    case MoveKind::Surgery:
    case MoveKind::Bridge: {
      const Factor f = factor_from_segments(before, m.segments);
      const Nanophrase v = factor_phrase(before, f);
      r.inserted = v.words();
      r.inserted_proj = v.projection();
      break;
    }
    default:
      break;
  }
  if (m.kind == MoveKind::Iso) r.inverse = false;
  return r;
}

}  // namespace

Metamorphosis inverse_metamorphosis(const Nanoword& w, const Metamorphosis& m) {
  Metamorphosis out;
  Nanoword cur = w;
  for (const auto& mv : m.moves) {
    out.moves.push_back(invert_step(cur, mv));
    cur = apply_move(cur, mv);
  }
  std::reverse(out.moves.begin(), out.moves.end());
  return out;
}

// --------------------------------------------------------------------- BFS

namespace {

std::vector<Move> neighbor_moves(const Nanoword& w, const Repertoire& rep, const Caps& caps, std::size_t max_length) {
  std::vector<Move> out;
  const auto& g = w.ground();
  const std::size_t n = w.length();
  if (rep.homotopy) {
    for (auto i : find_h1_sites(w)) out.push_back({MoveKind::H1, false, {i}, {}, {}, {}, {}});
    for (auto s : find_h2_sites(w)) out.push_back({MoveKind::H2, false, {s.i, s.j}, {}, {}, {}, {}});
    for (bool inv : {false, true}) {
      for (auto s : find_h3_sites(w, inv)) out.push_back({MoveKind::H3, inv, {s.i, s.j, s.k}, {}, {}, {}, {}});
    }
  }
  if (rep.surgery) {
    for (const auto& f : enumerate_even_symmetric_factors(w, caps.max_letters, caps.max_k)) {
      out.push_back({MoveKind::Surgery, false, {}, f.segments, {}, {}, {}});
    }
  }
  if (rep.insertions) {
    const auto symbols = static_cast<int>(g.size());
    if (n + 2 <= max_length) {
      for (std::size_t i = 0; i <= n; ++i) {
        for (int a = 0; a < symbols; ++a) out.push_back({MoveKind::H1, true, {i}, {}, {}, {}, {a}});
      }
    }
    if (n + 4 <= max_length) {
      for (std::size_t i = 0; i <= n; ++i) {
        for (std::size_t j = i; j <= n; ++j) {
          for (int a = 0; a < symbols; ++a) {
            // xAByBAz with |B| = tau|A|
            out.push_back({MoveKind::H2, true, {i, j + 2}, {}, {}, {}, {a}});
            // (AB|AB) with |B| = tau|A|
            out.push_back({MoveKind::Surgery, true, {}, {{i, i + 2}, {j + 2, j + 4}}, {}, {{0, 1}, {0, 1}},
                           {a, g.tau(a)}});
          }
        }
      }
    }
    for (const auto& tpl : rep.templates) {
      std::size_t len = 0;
      for (const auto& word : tpl.words()) len += word.size();
      if (n + len > max_length) continue;
      // Non-decreasing insertion points in w, one per template word.
      const std::size_t k = tpl.word_count();
      std::vector<std::size_t> at(k, 0);
      while (true) {
        std::vector<Segment> segs;
        std::size_t shift = 0;
        for (std::size_t r = 0; r < k; ++r) {
          const std::size_t b = at[r] + shift;
          segs.push_back({b, b + tpl.words()[r].size()});
          shift += tpl.words()[r].size();
        }
        out.push_back({MoveKind::Surgery, true, {}, segs, {}, tpl.words(), tpl.projection()});
        std::size_t r = k;
        while (r > 0 && at[r - 1] == n) --r;
        if (r == 0) break;
        ++at[r - 1];
        for (std::size_t q = r; q < k; ++q) at[q] = at[r - 1];
      }
    }
  }
  if (rep.shifts && n > 0) {
    out.push_back({MoveKind::Shift, false, {}, {}, {}, {}, {}});
    out.push_back({MoveKind::Shift, true, {}, {}, {}, {}, {}});
  }
  return out;
}

struct Node {
  Nanoword word;
  std::ptrdiff_t parent = -1;
  Move move;
};

BfsOutcome run_bfs(const Nanoword& w, const std::optional<std::string>& goal, const Repertoire& rep, const Caps& caps,
                   const std::function<bool(const Nanoword&)>& visit, std::size_t max_length) {
  BfsOutcome out;
  std::vector<Node> nodes;
  std::unordered_map<std::string, std::size_t> seen;
  auto finish = [&](std::size_t idx) {
    out.found = true;
    std::vector<Move> path;
    for (auto i = static_cast<std::ptrdiff_t>(idx); nodes[static_cast<std::size_t>(i)].parent >= 0;
         i = nodes[static_cast<std::size_t>(i)].parent) {
      path.push_back(nodes[static_cast<std::size_t>(i)].move);
    }
    std::reverse(path.begin(), path.end());
    out.path.moves = std::move(path);
  };
  nodes.push_back({canonical_form(w), -1, {}});
  seen.emplace(canonical_key(w), 0);
  out.nodes = 1;
  if (visit && !visit(nodes[0].word)) return out;
  if (goal && canonical_key(w) == *goal) {
    finish(0);
    return out;
  }
  for (std::size_t head = 0; head < nodes.size(); ++head) {
    const Nanoword cur = nodes[head].word;
    for (const auto& mv : neighbor_moves(cur, rep, caps, max_length)) {
      Nanoword next;
      try {
        next = apply_move(cur, mv);
      } catch (const std::invalid_argument&) {
        continue;  // insertion templates may fail the symmetry check
      }
      std::string key = canonical_key(next);
      if (seen.count(key)) continue;
      if (nodes.size() >= caps.bfs_nodes) return out;
      seen.emplace(key, nodes.size());
      nodes.push_back({canonical_form(next), static_cast<std::ptrdiff_t>(head), mv});
      out.nodes = nodes.size();
      if (visit && !visit(nodes.back().word)) return out;
      if (goal && key == *goal) {
        finish(nodes.size() - 1);
        return out;
      }
    }
  }
  out.exhausted = true;
  return out;
}

std::size_t length_cap(const Caps& caps, std::size_t a, std::size_t b) {
  if (caps.bfs_length > 0) return static_cast<std::size_t>(caps.bfs_length);
  return std::max(a, b) + 4;
}

}  // namespace

BfsOutcome bounded_bfs(const Nanoword& w, const Nanoword& v, const Repertoire& rep, const Caps& caps) {
  if (!(w.ground() == v.ground())) throw std::invalid_argument("ground alphabet mismatch");
  return run_bfs(w, canonical_key(v), rep, caps, nullptr, length_cap(caps, w.length(), v.length()));
}

BfsOutcome bfs_explore(const Nanoword& w, const Repertoire& rep, const Caps& caps,
                       const std::function<bool(const Nanoword&)>& visit) {
  return run_bfs(w, std::nullopt, rep, caps, visit, length_cap(caps, w.length(), 0));
}

// ------------------------------------------------------------- norm bounds

NormBounds length_norm_bounds(const Nanoword& w, const Caps& caps) {
  NormBounds nb;
  std::size_t shortest = w.length();
  bool slice = w.empty();
  bfs_explore(w, Repertoire{}, caps, [&](const Nanoword& x) {
    shortest = std::min(shortest, x.length());
    if (x.empty()) slice = true;
    return !slice;
  });
  nb.upper = static_cast<int>(shortest / 2);
  if (slice) return NormBounds{0, 0};

  const PiWord gamma = gamma_of(w);
  const AlphaPairing p = pairing_of_nanoword(w);
  const bool non_slice = !gamma.is_identity() || !is_hyperbolic(p).has_value();
  if (!non_slice) return nb;

  // The length norm never equals 1.
  int lower = 2;
  // Every cobordant word carries gamma(w) in its letters.
  lower = std::max(lower, static_cast<int>((gamma.letter_length() + 1) / 2));
  // u-degree bound, computed on the pull-back to the free orbits.
  const auto& g = w.ground();
  std::vector<int> beta;
  for (const auto& o : g.orbits()) {
    if (o.kind == OrbitKind::Free) beta.insert(beta.end(), o.members.begin(), o.members.end());
  }
  if (!beta.empty()) {
    const Nanoword x = pull_back(w, beta);
    std::vector<std::string> names;
    std::vector<int> tau;
    std::vector<int> to_sub(g.size(), -1);
    for (int s : beta) {
      to_sub[static_cast<std::size_t>(s)] = static_cast<int>(names.size());
      names.push_back(g.name(s));
    }
    for (int s : beta) tau.push_back(to_sub[static_cast<std::size_t>(g.tau(s))]);
    const AlphabetPtr sub = make_alphabet(InvolutiveAlphabet(names, tau));
    std::vector<int> proj;
    for (int s : x.projection()) proj.push_back(to_sub[static_cast<std::size_t>(s)]);
    const Nanoword xs(sub, x.sequence(), proj, x.names());
    const UPoly u = u_polynomial_of_nanoword(xs);
    for (const auto& o : sub->orbits()) {
      if (u.orbits[static_cast<std::size_t>(sub->orbit_of(o.representative))].empty()) continue;
      lower = std::max(lower, static_cast<int>(u_degree(u, *sub, o.representative)) + 1);
    }
  }
  // Genus bound sigma/2 + 1 with sigma = rank/2.
  for (const auto& gen : genera(p, sign_battery(g))) {
    lower = std::max(lower, (gen.twice_value + 3) / 4 + 1);
  }
  nb.lower = lower;
  return nb;
}

}  // namespace nanocob
