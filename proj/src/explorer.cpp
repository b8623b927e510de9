#include "nanocob/explorer.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <unordered_map>

namespace nanocob {

// ------------------------------------------------------------- enumeration

void for_each_nanoword(std::size_t half_length, const AlphabetPtr& alpha,
                       const std::function<void(const Nanoword&)>& visit) {
  const std::size_t len = 2 * half_length;
  const std::size_t symbols = alpha->size();
  if (symbols == 0 && half_length > 0) return;
  std::vector<int> seq(len, -1);
  std::vector<int> proj(half_length, 0);
  auto label_all = [&]() {
    std::fill(proj.begin(), proj.end(), 0);
    while (true) {
      visit(Nanoword(alpha, seq, proj));
      std::size_t i = half_length;
      while (i > 0 && proj[i - 1] == static_cast<int>(symbols) - 1) proj[--i] = 0;
      if (i == 0) return;
      ++proj[i - 1];
    }
  };
  // The first free position always opens the next letter, so letters are
  // numbered by first occurrence.
  std::function<void(int)> match = [&](int next) {
    std::size_t p = 0;
    while (p < len && seq[p] != -1) ++p;
    if (p == len) {
      label_all();
      return;
    }
    seq[p] = next;
    for (std::size_t q = p + 1; q < len; ++q) {
      if (seq[q] != -1) continue;
      seq[q] = next;
      match(next + 1);
      seq[q] = -1;
    }
    seq[p] = -1;
  };
  match(0);
}

std::vector<Nanoword> enumerate_nanowords(std::size_t half_length, const AlphabetPtr& alpha, bool allow_large) {
  if (!allow_large && (alpha->size() > 3 || half_length > 6)) {
    throw std::invalid_argument("enumeration with more than 3 symbols or half-length above 6 needs the override flag");
  }
  std::vector<Nanoword> out;
  for_each_nanoword(half_length, alpha, [&](const Nanoword& w) { out.push_back(w); });
  return out;
}

// ------------------------------------------------------------------ records

InvariantRecord invariant_record(const Nanoword& w, const std::vector<PhiSpec>& phis) {
  InvariantRecord rec;
  rec.word = canonical_form(w);
  rec.gamma = gamma_of(w);
  rec.gamma_conj_class = conjugacy_normal_form(rec.gamma);
  rec.u = u_polynomial_of_nanoword(w);
  const AlphaPairing p = pairing_of_nanoword(w);
  const auto gs = genera(p, phis);
  for (std::size_t i = 0; i < phis.size(); ++i) rec.genera.emplace_back(phis[i].id(w.ground()), gs[i]);
  rec.hyperbolic = is_hyperbolic(p).has_value();
  rec.r = r_of(p);
  return rec;
}

InvariantRecord invariant_record(const Nanoword& w) { return invariant_record(w, sign_battery(w.ground())); }

// -------------------------------------------------------------- slice test

SliceVerdict slice_status(const Nanoword& w, const Caps& caps) {
  SliceVerdict v;
  v.caps = caps;
  if (w.empty()) {
    v.status = SliceStatus::Slice;
    return v;
  }
  const AlphaPairing p = pairing_of_nanoword(w);
  if (!gamma_of(w).is_identity()) v.all_obstructions.push_back("gamma");
  if (!is_hyperbolic(p)) v.all_obstructions.push_back("pairing");
  if (!u_polynomial(p).is_zero()) v.all_obstructions.push_back("u");
  for (const auto& g : genera(p, sign_battery(w.ground()))) {
    if (g.twice_value > 0) {
      v.all_obstructions.push_back("sigma");
      break;
    }
  }
  if (!v.all_obstructions.empty()) {
    v.status = SliceStatus::NotSlice;
    v.obstruction = v.all_obstructions.front();
    return v;
  }
  const Nanoword empty(w.ground_ptr(), {}, {});
  const BfsOutcome out = bounded_bfs(w, empty, Repertoire{}, caps);
  v.nodes = out.nodes;
  if (out.found) {
    v.status = SliceStatus::Slice;
    v.witness = out.path;
  }
  return v;
}

std::string format_verdict(const SliceVerdict& v) {
  switch (v.status) {
    case SliceStatus::Slice:
      return "Slice";
    case SliceStatus::NotSlice:
      return "NotSlice(" + v.obstruction + ")";
    case SliceStatus::Unknown: {
      std::ostringstream out;
      out << "Unknown(letters=" << v.caps.max_letters << ",k=" << v.caps.max_k << ",bfs=" << v.caps.bfs_length
          << ",nodes=" << v.caps.bfs_nodes << ")";
      return out.str();
    }
  }
  return "Unknown";
}

// ---------------------------------------------------------------- parallel

void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& f) {
  if (jobs <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(jobs, n));
  for (unsigned t = 0; t < workers; ++t) {
    pool.emplace_back([&]() {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          f(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

// ----------------------------------------------------------- classification

namespace {

std::string bucket_key(const InvariantRecord& r) {
  const auto& g = r.word.ground();
  std::string key = format_pi_word(r.gamma) + "|" + format_upoly(r.u, g) + "|";
  for (const auto& [id, gen] : r.genera) key += id + ":" + std::to_string(gen.twice_value) + ";";
  key += r.hyperbolic ? "|H|" : "|N|";
  key += format_pi(g, r.r);
  return key;
}

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void join(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

Classification classify(std::size_t half_length, const AlphabetPtr& alpha, const Caps& caps, bool allow_large,
                        unsigned jobs) {
  Classification c;
  c.caps = caps;
  std::vector<Nanoword> words;
  for (std::size_t h = 0; h <= half_length; ++h) {
    for (auto& w : enumerate_nanowords(h, alpha, allow_large)) words.push_back(std::move(w));
  }
  const std::size_t n = words.size();
  c.rows.resize(n);
  const auto phis = sign_battery(*alpha);
  parallel_for(n, jobs, [&](std::size_t i) {
    c.rows[i].record = invariant_record(words[i], phis);
    c.rows[i].verdict = slice_status(words[i], caps);
  });

  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < n; ++i) index.emplace(canonical_key(words[i]), i);
  std::vector<std::string> keys(n);
  std::map<std::string, std::vector<std::size_t>> buckets;
  for (std::size_t i = 0; i < n; ++i) {
    keys[i] = bucket_key(c.rows[i].record);
    buckets[keys[i]].push_back(i);
  }

  // Merge step: single-threaded so the union order is deterministic.
  UnionFind uf(n);
  const std::size_t empty_row = 0;  // half-length 0 comes first
  for (std::size_t i = 0; i < n; ++i) {
    if (c.rows[i].verdict.status == SliceStatus::Slice) uf.join(i, empty_row);
  }
  for (const auto& [key, members] : buckets) {
    if (members.size() < 2) continue;
    for (std::size_t i : members) {
      auto all_joined = [&]() {
        for (std::size_t j : members) {
          if (uf.find(j) != uf.find(i)) return false;
        }
        return true;
      };
      if (all_joined()) break;
      bfs_explore(words[i], Repertoire{}, caps, [&](const Nanoword& x) {
        auto it = index.find(canonical_key(x));
        if (it != index.end() && keys[it->second] == key) uf.join(i, it->second);
        return !all_joined();
      });
    }
  }
  for (std::size_t i = 0; i < n; ++i) c.rows[i].component = uf.find(i);

  c.relation.assign(n, std::vector<PairRelation>(n, PairRelation::Unknown));
  std::vector<AlphaPairing> pairings;
  pairings.reserve(n);
  for (const auto& w : words) pairings.push_back(pairing_of_nanoword(w));
  for (std::size_t i = 0; i < n; ++i) {
    c.relation[i][i] = PairRelation::Cobordant;
    for (std::size_t j = i + 1; j < n; ++j) {
      PairRelation rel = PairRelation::Unknown;
      const bool joined = c.rows[i].component == c.rows[j].component;
      const bool distinct = keys[i] != keys[j] ||
                            !is_hyperbolic(sum_pairings(pairings[i], opposite_pairing(pairings[j]))).has_value();
      if (joined && distinct) {
        throw std::logic_error("classification marked " + words[i].to_string() + " and " + words[j].to_string() +
                               " both cobordant and distinct");
      }
      if (joined) rel = PairRelation::Cobordant;
      if (distinct) rel = PairRelation::Distinct;
      c.relation[i][j] = c.relation[j][i] = rel;
    }
  }
  return c;
}

// ------------------------------------------------------------ random inputs

namespace {

std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

}  // namespace

AlphabetPtr random_alphabet(Rng& rng, int max_free, int max_fixed) {
  const int free_orbits = static_cast<int>(uniform(rng, 1, static_cast<std::size_t>(std::max(1, max_free))));
  const int fixed = static_cast<int>(uniform(rng, 0, static_cast<std::size_t>(std::max(0, max_fixed))));
  std::vector<std::string> names;
  std::vector<int> tau;
  for (int i = 0; i < free_orbits; ++i) {
    names.push_back(std::string(1, static_cast<char>('a' + i)));
    names.push_back(std::string(1, static_cast<char>('a' + i)) + "~");
    tau.push_back(2 * i + 1);
    tau.push_back(2 * i);
  }
  for (int i = 0; i < fixed; ++i) {
    names.push_back(std::string(1, static_cast<char>('t' + i)));
    tau.push_back(static_cast<int>(tau.size()));
  }
  return make_alphabet(InvolutiveAlphabet(names, tau));
}

Nanoword random_word(Rng& rng, const AlphabetPtr& alpha, std::size_t half_length) {
  std::vector<int> seq;
  for (std::size_t a = 0; a < half_length; ++a) {
    seq.push_back(static_cast<int>(a));
    seq.push_back(static_cast<int>(a));
  }
  std::shuffle(seq.begin(), seq.end(), rng);
  std::vector<int> proj(half_length);
  for (auto& s : proj) s = static_cast<int>(uniform(rng, 0, alpha->size() - 1));
  return canonical_form(Nanoword(alpha, seq, proj));
}

Nanophrase random_even_symmetric_phrase(Rng& rng, const AlphabetPtr& alpha, std::size_t half_length,
                                        std::size_t words) {
  if (words == 0 || words > half_length) throw std::invalid_argument("need 1 <= words <= half-length");
  // Word r has length 2*part[r].
  std::vector<std::size_t> part(words, 1);
  for (std::size_t extra = half_length - words; extra > 0; --extra) ++part[uniform(rng, 0, words - 1)];
  std::vector<std::size_t> word_of;
  std::vector<std::size_t> mirror;
  for (std::size_t r = 0, base = 0; r < words; ++r) {
    const std::size_t len = 2 * part[r];
    for (std::size_t j = 0; j < len; ++j) {
      word_of.push_back(r);
      mirror.push_back(base + len - 1 - j);
    }
    base += len;
  }
  const std::size_t total = word_of.size();
  // Mirror pairs {x, M x} with x < M x, matched so the letter matching
  // commutes with M.
  std::vector<std::size_t> lows;
  for (std::size_t x = 0; x < total; ++x) {
    if (x < mirror[x]) lows.push_back(x);
  }
  std::shuffle(lows.begin(), lows.end(), rng);
  std::vector<int> flat(total, -1);
  std::vector<int> proj;
  const auto& g = *alpha;
  auto random_symbol = [&]() { return static_cast<int>(uniform(rng, 0, g.size() - 1)); };
  for (std::size_t i = 0; i < lows.size();) {
    const std::size_t x = lows[i];
    if (i + 1 == lows.size() || uniform(rng, 0, 2) == 0) {
      flat[x] = flat[mirror[x]] = static_cast<int>(proj.size());
      proj.push_back(random_symbol());
      ++i;
      continue;
    }
    std::size_t y = lows[i + 1];
    if (uniform(rng, 0, 1) == 1) y = mirror[y];
    const int a = static_cast<int>(proj.size());
    flat[x] = flat[y] = a;
    flat[mirror[x]] = flat[mirror[y]] = a + 1;
    const int pa = random_symbol();
    const bool eps = word_of[x] != word_of[y];
    proj.push_back(pa);
    proj.push_back(eps ? g.tau(pa) : pa);
    i += 2;
  }
  std::vector<std::vector<int>> ws(words);
  for (std::size_t x = 0; x < total; ++x) ws[word_of[x]].push_back(flat[x]);
  Nanophrase v(alpha, std::move(ws), std::move(proj));
  if (!symmetry_witness(v)) throw std::logic_error("generated phrase is not symmetric");
  return v;
}

EmbeddedFactor embed_phrase(Rng& rng, const Nanophrase& v, const Nanoword& rest) {
  const std::size_t k = v.word_count();
  std::vector<std::size_t> at(k);
  for (auto& a : at) a = uniform(rng, 0, rest.length());
  std::sort(at.begin(), at.end());
  const int m = static_cast<int>(rest.letter_count());
  std::vector<int> seq;
  EmbeddedFactor out;
  std::size_t r = 0;
  for (std::size_t p = 0; p <= rest.length(); ++p) {
    while (r < k && at[r] == p) {
      const std::size_t begin = seq.size();
      for (int l : v.words()[r]) seq.push_back(m + l);
      out.factor.segments.push_back({begin, seq.size()});
      ++r;
    }
    if (p < rest.length()) seq.push_back(rest.at(p));
  }
  std::vector<int> proj = rest.projection();
  proj.insert(proj.end(), v.projection().begin(), v.projection().end());
  for (std::size_t l = 0; l < v.letter_count(); ++l) out.factor.letters.push_back(m + static_cast<int>(l));
  out.word = Nanoword(rest.ground_ptr(), std::move(seq), std::move(proj));
  return out;
}

AlphaPairing random_pairing(Rng& rng, const AlphabetPtr& alpha, std::size_t core, int bound) {
  const auto& g = *alpha;
  std::vector<int> proj(core);
  for (auto& s : proj) s = static_cast<int>(uniform(rng, 0, g.size() - 1));
  const std::size_t dim = core + 1;
  std::vector<PiElement> matrix(dim * dim);
  std::uniform_int_distribution<int> coeff(-bound, bound);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = i + 1; j < dim; ++j) {
      PiElement x;
      for (std::size_t o = 0; o < g.orbits().size(); ++o) {
        const bool torsion = g.orbits()[o].kind == OrbitKind::Fixed;
        const int c = coeff(rng);
        if (c != 0) x += PiElement::generator(static_cast<int>(o), torsion ? (c & 1) : c, torsion);
      }
      matrix[i * dim + j] = x;
      matrix[j * dim + i] = -x;
    }
  }
  return AlphaPairing(alpha, proj, matrix);
}

// -------------------------------------------------------- bridge inequality

BridgeReport bridge_inequality_suite(Rng& rng, std::size_t samples, const AlphabetPtr& alpha, const Caps& caps,
                                     std::size_t max_half_length) {
  if (!alpha->fixed_point_free()) throw std::invalid_argument("bridge inequality needs a fixed-point-free alphabet");
  BridgeReport rep;
  rep.min_slack = 1 << 20;
  const auto phis = sign_battery(*alpha);
  for (std::size_t s = 0; s < samples; ++s) {
    const Nanoword w = random_word(rng, alpha, uniform(rng, 1, max_half_length));
    ++rep.words;
    const AlphaPairing pw = pairing_of_nanoword(w);
    for (const auto& b : enumerate_bridges(w, caps.max_letters, caps.max_k)) {
      ++rep.bridges;
      const Nanoword x = apply_bridge(w, b);
      const AlphaPairing px = opposite_pairing(pairing_of_nanoword(x));
      const auto sums = genera(sum_pairings(pw, px), phis);
      const auto tuples = tuple_genera({pw, px}, phis, caps.s_bound);
      for (std::size_t i = 0; i < phis.size(); ++i) {
        ++rep.checks;
        // arches >= sigma/2 with sigma = twice_value/2
        const int slack = 4 * b.arches - sums[i].twice_value;
        rep.min_slack = std::min(rep.min_slack, slack);
        const bool weak_ok = 4 * b.arches >= tuples[i].twice_value;
        if (slack < 0 || !weak_ok || (b.arches == 0 && sums[i].twice_value != 0)) {
          ++rep.violations;
          if (rep.failures.size() < 10) {
            rep.failures.push_back(w.to_string() + " / " + w.projection_string() + " arches=" +
                                   std::to_string(b.arches) + " twice_sigma=" + std::to_string(sums[i].twice_value));
          }
        }
      }
    }
  }
  if (rep.checks == 0) rep.min_slack = 0;
  return rep;
}

}  // namespace nanocob
