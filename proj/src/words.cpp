#include "nanocob/words.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace nanocob {

namespace {

std::vector<std::string> default_names(std::size_t m) {
  std::vector<std::string> names;
  names.reserve(m);
  for (std::size_t i = 0; i < m; ++i) names.push_back("L" + std::to_string(i + 1));
  return names;
}

void check_projection(const AlphabetPtr& ground, const std::vector<int>& projection) {
  if (!ground) throw std::invalid_argument("missing ground alphabet");
  for (int s : projection) {
    if (s < 0 || s >= static_cast<int>(ground->size())) {
      throw std::invalid_argument("projection outside the ground alphabet");
    }
  }
}

// Records entry positions and rejects any letter not occurring exactly twice.
template <typename Entry>
std::vector<std::pair<Entry, Entry>> locate(const std::vector<int>& flat,
                                            const std::vector<Entry>& tags, std::size_t m,
                                            const std::vector<std::string>& names) {
  std::vector<int> count(m, 0);
  std::vector<std::pair<Entry, Entry>> where(m);
  for (std::size_t i = 0; i < flat.size(); ++i) {
    const int a = flat[i];
    if (a < 0 || a >= static_cast<int>(m)) throw std::invalid_argument("letter id out of range");
    if (count[a] == 0) where[a].first = tags[i];
    if (count[a] == 1) where[a].second = tags[i];
    ++count[a];
  }
  if (std::any_of(count.begin(), count.end(), [](int c) { return c != 2; })) {
    std::string msg = "letter ";
    for (std::size_t a = 0; a < m; ++a) {
      if (a > 0) msg += ", ";
      msg += names[a] + " occurs " + std::to_string(count[a]) + (count[a] == 1 ? "" : " times");
    }
    throw std::invalid_argument(msg);
  }
  return where;
}

}  // namespace

Nanoword::Nanoword(AlphabetPtr ground, std::vector<int> sequence, std::vector<int> projection,
                   std::vector<std::string> names)
    : ground_(std::move(ground)),
      sequence_(std::move(sequence)),
      projection_(std::move(projection)),
      names_(std::move(names)) {
  check_projection(ground_, projection_);
  if (names_.empty()) names_ = default_names(projection_.size());
  if (names_.size() != projection_.size()) throw std::invalid_argument("name table size mismatch");
  std::vector<std::size_t> tags(sequence_.size());
  for (std::size_t i = 0; i < tags.size(); ++i) tags[i] = i;
  positions_ = locate(sequence_, tags, projection_.size(), names_);
}

int Nanoword::letter_id(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) throw std::invalid_argument("unknown letter '" + name + "'");
  return static_cast<int>(it - names_.begin());
}

std::string Nanoword::to_string() const {
  if (sequence_.empty()) return "()";
  std::string out;
  for (std::size_t i = 0; i < sequence_.size(); ++i) {
    if (i > 0) out += ' ';
    out += names_[sequence_[i]];
  }
  return out;
}

std::string Nanoword::projection_string() const {
  // Letters listed in order of first occurrence.
  std::string out;
  std::vector<bool> done(projection_.size(), false);
  for (int a : sequence_) {
    if (done[a]) continue;
    done[a] = true;
    if (!out.empty()) out += ' ';
    out += names_[a] + "=" + ground_->name(projection_[a]);
  }
  return out;
}

bool Nanoword::operator==(const Nanoword& other) const {
  if (sequence_ != other.sequence_ || projection_ != other.projection_) return false;
  return ground_ == other.ground_ || *ground_ == *other.ground_;
}

Nanophrase::Nanophrase(AlphabetPtr ground, std::vector<std::vector<int>> words,
                       std::vector<int> projection, std::vector<std::string> names)
    : ground_(std::move(ground)),
      words_(std::move(words)),
      projection_(std::move(projection)),
      names_(std::move(names)) {
  check_projection(ground_, projection_);
  if (names_.empty()) names_ = default_names(projection_.size());
  if (names_.size() != projection_.size()) throw std::invalid_argument("name table size mismatch");
  std::vector<int> flat;
  std::vector<std::size_t> tags;
  for (std::size_t r = 0; r < words_.size(); ++r) {
    for (int a : words_[r]) {
      flat.push_back(a);
      tags.push_back(r);
    }
  }
  word_of_ = locate(flat, tags, projection_.size(), names_);
}

Nanoword Nanophrase::concatenation() const {
  std::vector<int> flat;
  for (const auto& w : words_) flat.insert(flat.end(), w.begin(), w.end());
  return Nanoword(ground_, flat, projection_, names_);
}

std::string Nanophrase::to_string() const {
  std::string out;
  for (std::size_t r = 0; r < words_.size(); ++r) {
    if (r > 0) out += " | ";
    for (std::size_t i = 0; i < words_[r].size(); ++i) {
      if (i > 0) out += ' ';
      out += names_[words_[r][i]];
    }
  }
  return out;
}

Nanoword canonical_form(const Nanoword& w) {
  std::vector<int> relabel(w.letter_count(), -1);
  int next = 0;
  std::vector<int> seq;
  seq.reserve(w.length());
  for (int a : w.sequence()) {
    if (relabel[a] == -1) relabel[a] = next++;
    seq.push_back(relabel[a]);
  }
  std::vector<int> proj(w.letter_count());
  for (std::size_t a = 0; a < w.letter_count(); ++a) proj[relabel[a]] = w.projection(static_cast<int>(a));
  return Nanoword(w.ground_ptr(), std::move(seq), std::move(proj));
}

std::string canonical_key(const Nanoword& w) {
  std::vector<int> relabel(w.letter_count(), -1);
  std::string key;
  key.reserve(w.length() + w.letter_count());
  int next = 0;
  std::vector<int> proj;
  for (int a : w.sequence()) {
    if (relabel[a] == -1) {
      relabel[a] = next++;
      proj.push_back(w.projection(a));
    }
    key.push_back(static_cast<char>(relabel[a]));
  }
  for (int s : proj) key.push_back(static_cast<char>(s));
  return key;
}

bool isomorphic(const Nanoword& u, const Nanoword& v) {
  return canonical_form(u) == canonical_form(v);
}

Nanoword opposite(const Nanoword& w) {
  std::vector<int> seq(w.sequence().rbegin(), w.sequence().rend());
  return Nanoword(w.ground_ptr(), std::move(seq), w.projection(), w.names());
}

Nanoword concatenate(const Nanoword& w1, const Nanoword& w2) {
  if (!(w1.ground() == w2.ground())) throw std::invalid_argument("ground alphabet mismatch");
  const int shift = static_cast<int>(w1.letter_count());
  std::vector<int> seq = w1.sequence();
  for (int a : w2.sequence()) seq.push_back(a + shift);
  std::vector<int> proj = w1.projection();
  proj.insert(proj.end(), w2.projection().begin(), w2.projection().end());
  std::vector<std::string> names = w1.names();
  for (const auto& n : w2.names()) {
    std::string fresh = n;
    while (std::find(names.begin(), names.end(), fresh) != names.end()) fresh += "*";
    names.push_back(fresh);
  }
  return Nanoword(w1.ground_ptr(), std::move(seq), std::move(proj), std::move(names));
}

std::optional<SymmetryWitness> symmetry_witness(const Nanophrase& v) {
  const std::size_t m = v.letter_count();
  SymmetryWitness wit;
  wit.iota.assign(m, -1);
  wit.epsilon.assign(m, 0);
  for (const auto& word : v.words()) {
    const std::size_t n = word.size();
    for (std::size_t i = 0; i < n; ++i) {
      const int a = word[i];
      const int b = word[n - 1 - i];
      if (wit.iota[a] == -1) {
        wit.iota[a] = b;
      } else if (wit.iota[a] != b) {
        return std::nullopt;
      }
    }
  }
  const auto& ground = v.ground();
  for (std::size_t a = 0; a < m; ++a) {
    const int b = wit.iota[a];
    if (wit.iota[b] != static_cast<int>(a)) return std::nullopt;
    auto [r1, r2] = v.word_of(static_cast<int>(a));
    wit.epsilon[a] = r1 == r2 ? 0 : 1;
    const int pa = v.projection()[a];
    const int want = wit.epsilon[a] ? ground.tau(pa) : pa;
    if (v.projection()[b] != want) return std::nullopt;
  }
  return wit;
}

std::optional<SymmetryWitness> symmetry_witness(const Nanoword& w) {
  return symmetry_witness(Nanophrase(w.ground_ptr(), {w.sequence()}, w.projection(), w.names()));
}

bool is_even(const Nanophrase& v) {
  return std::all_of(v.words().begin(), v.words().end(),
                     [](const auto& w) { return w.size() % 2 == 0; });
}

int epsilon(const Nanophrase& v, int letter) {
  if (letter < 0 || letter >= static_cast<int>(v.letter_count())) {
    throw std::invalid_argument("unknown letter");
  }
  auto [r1, r2] = v.word_of(letter);
  return r1 == r2 ? 0 : 1;
}

namespace {

std::string toggle_bar(const std::string& name) {
  if (!name.empty() && name.back() == '\'') return name.substr(0, name.size() - 1);
  return name + "'";
}

}  // namespace

Nanoword circular_shift(const Nanoword& w) {
  if (w.empty()) throw std::invalid_argument("cannot shift the empty word");
  const int a = w.at(0);
  std::vector<int> seq(w.sequence().begin() + 1, w.sequence().end());
  seq.push_back(a);
  std::vector<int> proj = w.projection();
  proj[a] = w.ground().tau(proj[a]);
  std::vector<std::string> names = w.names();
  names[a] = toggle_bar(names[a]);
  return Nanoword(w.ground_ptr(), std::move(seq), std::move(proj), std::move(names));
}

Nanoword inverse_circular_shift(const Nanoword& w) {
  if (w.empty()) throw std::invalid_argument("cannot shift the empty word");
  const int a = w.sequence().back();
  std::vector<int> seq{a};
  seq.insert(seq.end(), w.sequence().begin(), w.sequence().end() - 1);
  std::vector<int> proj = w.projection();
  proj[a] = w.ground().tau(proj[a]);
  std::vector<std::string> names = w.names();
  names[a] = toggle_bar(names[a]);
  return Nanoword(w.ground_ptr(), std::move(seq), std::move(proj), std::move(names));
}

Nanoword push_forward(const Nanoword& w, AlphabetPtr target, const std::vector<int>& f) {
  const auto& src = w.ground();
  if (f.size() != src.size()) throw std::invalid_argument("map must cover the ground alphabet");
  for (std::size_t x = 0; x < f.size(); ++x) {
    if (f[x] < 0 || f[x] >= static_cast<int>(target->size())) {
      throw std::invalid_argument("map lands outside the target alphabet");
    }
  }
  for (std::size_t x = 0; x < f.size(); ++x) {
    if (f[src.tau(static_cast<int>(x))] != target->tau(f[x])) {
      throw std::invalid_argument("map does not commute with the involutions at '" +
                                  src.name(static_cast<int>(x)) + "'");
    }
  }
  std::vector<int> proj;
  for (int s : w.projection()) proj.push_back(f[s]);
  return Nanoword(std::move(target), w.sequence(), std::move(proj), w.names());
}

Nanoword pull_back(const Nanoword& w, const std::vector<int>& beta) {
  const auto& g = w.ground();
  std::vector<bool> in(g.size(), false);
  for (int s : beta) in.at(s) = true;
  for (int s : beta) {
    if (!in[g.tau(s)]) throw std::invalid_argument("subset is not tau-invariant");
  }
  std::vector<bool> doomed(w.letter_count());
  for (std::size_t a = 0; a < w.letter_count(); ++a) doomed[a] = !in[w.projection(static_cast<int>(a))];
  return delete_letters(w, doomed);
}

Nanoword delete_letters(const Nanoword& w, const std::vector<bool>& doomed) {
  std::vector<int> renumber(w.letter_count(), -1);
  std::vector<int> proj;
  std::vector<std::string> names;
  for (std::size_t a = 0; a < w.letter_count(); ++a) {
    if (doomed[a]) continue;
    renumber[a] = static_cast<int>(proj.size());
    proj.push_back(w.projection(static_cast<int>(a)));
    names.push_back(w.name(static_cast<int>(a)));
  }
  std::vector<int> seq;
  for (int a : w.sequence()) {
    if (!doomed[a]) seq.push_back(renumber[a]);
  }
  return Nanoword(w.ground_ptr(), std::move(seq), std::move(proj), std::move(names));
}

PiWord gamma_of(const Nanoword& w) {
  PiWord g(w.ground_ptr());
  for (std::size_t i = 0; i < w.length(); ++i) {
    const int a = w.at(i);
    const bool first = w.positions(a).first == i;
    g = g * PiWord::generator(w.ground_ptr(), w.projection(a), first ? 1 : -1);
  }
  return g;
}

namespace {

std::vector<std::string> split_letters(const std::string& text) {
  std::vector<std::string> out;
  if (text.find(' ') == std::string::npos) {
    for (char c : text) out.emplace_back(1, c);
    return out;
  }
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

struct Interned {
  std::vector<std::string> names;
  std::vector<int> proj;
  int id(const std::string& n) {
    auto it = std::find(names.begin(), names.end(), n);
    if (it != names.end()) return static_cast<int>(it - names.begin());
    names.push_back(n);
    return static_cast<int>(names.size()) - 1;
  }
};

void assign_projection(Interned& in, const InvolutiveAlphabet& ground,
                       const std::vector<std::pair<std::string, std::string>>& proj) {
  in.proj.assign(in.names.size(), -1);
  for (const auto& [letter, sym] : proj) {
    auto it = std::find(in.names.begin(), in.names.end(), letter);
    if (it == in.names.end()) throw std::invalid_argument("projection for unknown letter '" + letter + "'");
    in.proj[it - in.names.begin()] = ground.index_of(sym);
  }
  for (std::size_t a = 0; a < in.names.size(); ++a) {
    if (in.proj[a] == -1) throw std::invalid_argument("projection missing for letter '" + in.names[a] + "'");
  }
}

}  // namespace

Nanoword make_word(AlphabetPtr ground, const std::string& letters,
                   const std::vector<std::pair<std::string, std::string>>& proj) {
  Interned in;
  std::vector<int> seq;
  for (const auto& n : split_letters(letters)) seq.push_back(in.id(n));
  assign_projection(in, *ground, proj);
  return Nanoword(std::move(ground), std::move(seq), std::move(in.proj), std::move(in.names));
}

Nanophrase make_phrase(AlphabetPtr ground, const std::string& words,
                       const std::vector<std::pair<std::string, std::string>>& proj) {
  Interned in;
  std::vector<std::vector<int>> ws;
  std::string part;
  std::istringstream parts(words);
  while (std::getline(parts, part, '|')) {
    std::string trimmed = part;
    trimmed.erase(0, trimmed.find_first_not_of(' '));
    trimmed.erase(trimmed.find_last_not_of(' ') + 1);
    std::vector<int> w;
    for (const auto& n : split_letters(trimmed)) w.push_back(in.id(n));
    ws.push_back(std::move(w));
  }
  assign_projection(in, *ground, proj);
  return Nanophrase(std::move(ground), std::move(ws), std::move(in.proj), std::move(in.names));
}

}  // namespace nanocob
