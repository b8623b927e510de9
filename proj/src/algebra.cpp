#include "nanocob/algebra.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace nanocob {

InvolutiveAlphabet::InvolutiveAlphabet(std::vector<std::string> symbols, std::vector<int> tau)
    : symbols_(std::move(symbols)), tau_(std::move(tau)) {
  const int n = static_cast<int>(symbols_.size());
  if (static_cast<int>(tau_.size()) != n) {
    throw std::invalid_argument("tau must be defined on every symbol");
  }
  std::set<std::string> seen;
  for (const auto& s : symbols_) {
    if (s.empty()) throw std::invalid_argument("empty symbol name");
    if (!seen.insert(s).second) throw std::invalid_argument("duplicate symbol '" + s + "'");
  }
  for (int i = 0; i < n; ++i) {
    if (tau_[i] < 0 || tau_[i] >= n) throw std::invalid_argument("tau maps outside the alphabet");
    if (tau_[tau_[i]] != i) {
      throw std::invalid_argument("tau is not an involution at '" + symbols_[i] + "'");
    }
  }
  orbit_of_.assign(n, -1);
  for (int i = 0; i < n; ++i) {
    if (orbit_of_[i] != -1) continue;
    Orbit o;
    o.representative = i;
    o.members.push_back(i);
    if (tau_[i] != i) {
      o.kind = OrbitKind::Free;
      o.members.push_back(tau_[i]);
    } else {
      o.kind = OrbitKind::Fixed;
    }
    for (int m : o.members) orbit_of_[m] = static_cast<int>(orbits_.size());
    orbits_.push_back(std::move(o));
  }
}

InvolutiveAlphabet InvolutiveAlphabet::from_pairs(
    std::vector<std::string> symbols,
    const std::vector<std::pair<std::string, std::string>>& pairs, bool strict) {
  std::map<std::string, int> index;
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    if (!index.emplace(symbols[i], static_cast<int>(i)).second) {
      throw std::invalid_argument("duplicate symbol '" + symbols[i] + "'");
    }
  }
  std::vector<int> tau(symbols.size(), -1);
  for (const auto& [x, y] : pairs) {
    auto ix = index.find(x);
    auto iy = index.find(y);
    if (ix == index.end()) throw std::invalid_argument("unknown symbol '" + x + "' in tau");
    if (iy == index.end()) throw std::invalid_argument("unknown symbol '" + y + "' in tau");
    const int a = ix->second;
    const int b = iy->second;
    if (tau[a] == b && tau[b] == a) {
      if (strict) throw std::invalid_argument("pair " + x + "<->" + y + " declared twice");
      continue;
    }
    if (tau[a] != -1 || tau[b] != -1) {
      const std::string& bad = tau[a] != -1 ? x : y;
      throw std::invalid_argument("tau is not an involution: '" + bad + "' paired twice");
    }
    tau[a] = b;
    tau[b] = a;
  }
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    if (tau[i] == -1) throw std::invalid_argument("symbol '" + symbols[i] + "' missing from tau");
  }
  return InvolutiveAlphabet(std::move(symbols), std::move(tau));
}

const std::string& InvolutiveAlphabet::name(int symbol) const {
  if (symbol < 0 || symbol >= static_cast<int>(symbols_.size())) {
    throw std::out_of_range("symbol index out of range");
  }
  return symbols_[symbol];
}

int InvolutiveAlphabet::index_of(const std::string& name) const {
  auto it = std::find(symbols_.begin(), symbols_.end(), name);
  if (it == symbols_.end()) throw std::invalid_argument("unknown symbol '" + name + "'");
  return static_cast<int>(it - symbols_.begin());
}

bool InvolutiveAlphabet::contains(const std::string& name) const {
  return std::find(symbols_.begin(), symbols_.end(), name) != symbols_.end();
}

int InvolutiveAlphabet::tau(int symbol) const {
  name(symbol);
  return tau_[symbol];
}

int InvolutiveAlphabet::orbit_of(int symbol) const {
  name(symbol);
  return orbit_of_[symbol];
}

bool InvolutiveAlphabet::is_fixed(int symbol) const { return tau(symbol) == symbol; }

bool InvolutiveAlphabet::fixed_point_free() const {
  return std::none_of(orbits_.begin(), orbits_.end(),
                      [](const Orbit& o) { return o.kind == OrbitKind::Fixed; });
}

std::size_t InvolutiveAlphabet::free_orbit_count() const {
  return static_cast<std::size_t>(std::count_if(
      orbits_.begin(), orbits_.end(), [](const Orbit& o) { return o.kind == OrbitKind::Free; }));
}

int InvolutiveAlphabet::sign(int symbol) const {
  return orbits_[orbit_of(symbol)].representative == symbol ? 1 : -1;
}

AlphabetPtr make_alphabet(InvolutiveAlphabet alphabet) {
  return std::make_shared<const InvolutiveAlphabet>(std::move(alphabet));
}

std::vector<Orbit> orbit_decomposition(const InvolutiveAlphabet& alphabet) {
  return alphabet.orbits();
}

// ---------------------------------------------------------------- PiElement

PiElement PiElement::generator(int orbit, std::int64_t coeff, bool torsion) {
  PiElement x;
  if (torsion) coeff = ((coeff % 2) + 2) % 2;
  if (coeff != 0) x.terms_.push_back({orbit, coeff, torsion});
  return x;
}

std::int64_t PiElement::coefficient(int orbit) const {
  for (const auto& t : terms_) {
    if (t.orbit == orbit) return t.coeff;
  }
  return 0;
}

std::int64_t PiElement::free_degree() const {
  std::int64_t d = 0;
  for (const auto& t : terms_) {
    if (!t.torsion) d += t.coeff < 0 ? -t.coeff : t.coeff;
  }
  return d;
}

bool PiElement::has_torsion() const {
  return std::any_of(terms_.begin(), terms_.end(), [](const Term& t) { return t.torsion; });
}

PiElement PiElement::operator-() const {
  PiElement r = *this;
  for (auto& t : r.terms_) {
    if (!t.torsion) t.coeff = -t.coeff;
  }
  return r;
}

namespace {

std::vector<PiElement::Term> merge_terms(const std::vector<PiElement::Term>& a,
                                         const std::vector<PiElement::Term>& b, int sign) {
  std::vector<PiElement::Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].orbit < b[j].orbit)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].orbit < a[i].orbit) {
      PiElement::Term t = b[j++];
      if (!t.torsion) t.coeff *= sign;
      out.push_back(t);
    } else {
      PiElement::Term t = a[i];
      if (t.torsion != b[j].torsion) throw std::invalid_argument("mixed torsion on one orbit");
      t.coeff = t.torsion ? (t.coeff + b[j].coeff) % 2 : t.coeff + sign * b[j].coeff;
      if (t.coeff != 0) out.push_back(t);
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

PiElement& PiElement::operator+=(const PiElement& other) {
  if (other.terms_.empty()) return *this;
  terms_ = merge_terms(terms_, other.terms_, 1);
  return *this;
}

PiElement& PiElement::operator-=(const PiElement& other) {
  if (other.terms_.empty()) return *this;
  terms_ = merge_terms(terms_, other.terms_, -1);
  return *this;
}

PiElement operator*(std::int64_t k, const PiElement& x) {
  PiElement r;
  for (const auto& t : x.terms_) {
    std::int64_t c = t.torsion ? ((k % 2 + 2) % 2) * t.coeff % 2 : k * t.coeff;
    if (c != 0) r.terms_.push_back({t.orbit, c, t.torsion});
  }
  return r;
}

PiElement pi_of_letter(const InvolutiveAlphabet& alphabet, int symbol) {
  const int o = alphabet.orbit_of(symbol);
  const bool torsion = alphabet.orbits()[o].kind == OrbitKind::Fixed;
  return PiElement::generator(o, alphabet.sign(symbol), torsion);
}

std::string format_pi(const InvolutiveAlphabet& alphabet, const PiElement& x) {
  if (x.is_zero()) return "0";
  std::string out;
  for (const auto& t : x.terms()) {
    const std::string& rep = alphabet.name(alphabet.orbits()[t.orbit].representative);
    std::int64_t c = t.coeff;
    if (c < 0) {
      out += '-';
      c = -c;
    } else if (!out.empty()) {
      out += '+';
    }
    if (c != 1) out += std::to_string(c);
    out += rep;
    if (t.torsion) out += "(2)";
  }
  return out;
}

// ---------------------------------------------------------------- PiWord

namespace {

bool same_alphabet(const AlphabetPtr& a, const AlphabetPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

bool orbit_is_fixed(const AlphabetPtr& alphabet, int orbit) {
  return alphabet->orbits().at(orbit).kind == OrbitKind::Fixed;
}

}  // namespace

PiWord PiWord::generator(AlphabetPtr alphabet, int symbol, std::int64_t exponent) {
  PiWord w(alphabet);
  const int o = alphabet->orbit_of(symbol);
  w.push({o, exponent * alphabet->sign(symbol)});
  return w;
}

PiWord PiWord::from_syllables(AlphabetPtr alphabet, const std::vector<Syllable>& syllables) {
  PiWord w(std::move(alphabet));
  for (const auto& s : syllables) w.push(s);
  return w;
}

void PiWord::push(Syllable s) {
  const bool fixed = orbit_is_fixed(alphabet_, s.orbit);
  if (fixed) s.exponent = ((s.exponent % 2) + 2) % 2;
  if (s.exponent == 0) return;
  if (!syllables_.empty() && syllables_.back().orbit == s.orbit) {
    std::int64_t e = syllables_.back().exponent + s.exponent;
    if (fixed) e %= 2;
    if (e == 0) {
      syllables_.pop_back();
    } else {
      syllables_.back().exponent = e;
    }
    return;
  }
  syllables_.push_back(s);
}

std::int64_t PiWord::letter_length() const {
  std::int64_t n = 0;
  for (const auto& s : syllables_) n += s.exponent < 0 ? -s.exponent : s.exponent;
  return n;
}

PiWord PiWord::inverse() const {
  PiWord r(alphabet_);
  for (auto it = syllables_.rbegin(); it != syllables_.rend(); ++it) {
    r.push({it->orbit, -it->exponent});
  }
  return r;
}

PiWord operator*(const PiWord& u, const PiWord& v) {
  if (!u.alphabet_) return v;
  if (!v.alphabet_) return u;
  if (!same_alphabet(u.alphabet_, v.alphabet_)) throw std::invalid_argument("alphabet mismatch");
  PiWord r = u;
  for (const auto& s : v.syllables_) r.push(s);
  return r;
}

bool PiWord::operator==(const PiWord& other) const {
  if (syllables_ != other.syllables_) return false;
  if (syllables_.empty()) return true;
  return same_alphabet(alphabet_, other.alphabet_);
}

PiWord cyclic_reduction(const PiWord& u) {
  std::vector<PiWord::Syllable> s = u.syllables();
  while (s.size() >= 2 && s.front().orbit == s.back().orbit) {
    const bool fixed = orbit_is_fixed(u.alphabet(), s.front().orbit);
    std::int64_t e = s.front().exponent + s.back().exponent;
    if (fixed) e %= 2;
    s.pop_back();
    if (e == 0) {
      s.erase(s.begin());
    } else {
      s.front().exponent = e;
    }
  }
  return PiWord::from_syllables(u.alphabet(), s);
}

PiWord conjugacy_normal_form(const PiWord& u) {
  PiWord c = cyclic_reduction(u);
  const auto& s = c.syllables();
  if (s.size() < 2) return c;
  std::vector<PiWord::Syllable> best = s;
  for (std::size_t k = 1; k < s.size(); ++k) {
    std::vector<PiWord::Syllable> rot(s.begin() + static_cast<std::ptrdiff_t>(k), s.end());
    rot.insert(rot.end(), s.begin(), s.begin() + static_cast<std::ptrdiff_t>(k));
    if (rot < best) best = std::move(rot);
  }
  return PiWord::from_syllables(u.alphabet(), best);
}

bool pi_word_is_conjugate(const PiWord& u, const PiWord& v) {
  if (u.alphabet() && v.alphabet() && !same_alphabet(u.alphabet(), v.alphabet())) {
    throw std::invalid_argument("alphabet mismatch");
  }
  return conjugacy_normal_form(u).syllables() == conjugacy_normal_form(v).syllables();
}

PiElement abelianize(const PiWord& u) {
  PiElement x;
  for (const auto& s : u.syllables()) {
    x += PiElement::generator(s.orbit, s.exponent, orbit_is_fixed(u.alphabet(), s.orbit));
  }
  return x;
}

std::string format_pi_word(const PiWord& u) {
  if (u.is_identity()) return "1";
  std::string out;
  for (const auto& s : u.syllables()) {
    if (!out.empty()) out += ' ';
    const auto& alphabet = *u.alphabet();
    out += "z_" + alphabet.name(alphabet.orbits()[s.orbit].representative);
    if (s.exponent != 1) out += "^" + std::to_string(s.exponent);
  }
  return out;
}

// ---------------------------------------------------------------- PhiSpec

namespace {

bool is_prime(std::int64_t p) {
  if (p < 2) return false;
  for (std::int64_t d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

std::int64_t mod(std::int64_t x, std::int64_t p) { return ((x % p) + p) % p; }

Rational parse_rational(const std::string& text) {
  try {
    std::size_t slash = text.find('/');
    if (slash == std::string::npos) return Rational(std::stoll(text));
    return Rational(std::stoll(text.substr(0, slash)), std::stoll(text.substr(slash + 1)));
  } catch (const std::exception&) {
    throw std::invalid_argument("bad phi value '" + text + "'");
  }
}

}  // namespace

PhiSpec PhiSpec::rational(const InvolutiveAlphabet& alphabet, std::vector<Rational> orbit_values) {
  if (orbit_values.size() != alphabet.orbits().size()) {
    throw std::invalid_argument("phi needs one value per orbit");
  }
  for (std::size_t o = 0; o < orbit_values.size(); ++o) {
    if (alphabet.orbits()[o].kind == OrbitKind::Fixed && orbit_values[o].numerator() != 0) {
      throw std::invalid_argument("phi over Q must vanish on fixed orbit '" +
                                  alphabet.name(alphabet.orbits()[o].representative) + "'");
    }
  }
  PhiSpec phi;
  phi.field_ = FieldKind::Rationals;
  phi.values_ = std::move(orbit_values);
  return phi;
}

PhiSpec PhiSpec::prime_field(const InvolutiveAlphabet& alphabet, std::int64_t p,
                             std::vector<std::int64_t> orbit_values) {
  if (!is_prime(p) || p >= (std::int64_t{1} << 31)) {
    throw std::invalid_argument("phi target must be GF(p) with p a prime below 2^31");
  }
  if (orbit_values.size() != alphabet.orbits().size()) {
    throw std::invalid_argument("phi needs one value per orbit");
  }
  PhiSpec phi;
  phi.field_ = FieldKind::PrimeField;
  phi.prime_ = p;
  for (std::size_t o = 0; o < orbit_values.size(); ++o) {
    const std::int64_t v = mod(orbit_values[o], p);
    if (alphabet.orbits()[o].kind == OrbitKind::Fixed && mod(2 * v, p) != 0) {
      throw std::invalid_argument("phi must send fixed orbit '" +
                                  alphabet.name(alphabet.orbits()[o].representative) +
                                  "' to an element of order 2");
    }
    phi.values_.emplace_back(v);
  }
  return phi;
}

PhiSpec PhiSpec::parse(const InvolutiveAlphabet& alphabet, const std::string& text) {
  std::string assignments = text;
  std::int64_t p = 0;
  if (auto semi = text.find(';'); semi != std::string::npos) {
    assignments = text.substr(0, semi);
    std::string tail = text.substr(semi + 1);
    if (tail.rfind("p=", 0) != 0) throw std::invalid_argument("expected 'p=<prime>' after ';'");
    try {
      p = std::stoll(tail.substr(2));
    } catch (const std::exception&) {
      throw std::invalid_argument("bad prime in phi spec");
    }
  }
  std::vector<Rational> values(alphabet.orbits().size(), Rational(0));
  std::stringstream ss(assignments);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("expected name=value in phi spec");
    const int sym = alphabet.index_of(item.substr(0, eq));
    Rational v = parse_rational(item.substr(eq + 1));
    values[alphabet.orbit_of(sym)] = alphabet.sign(sym) > 0 ? v : -v;
  }
  if (p == 0) return rational(alphabet, std::move(values));
  std::vector<std::int64_t> ints;
  for (const auto& v : values) {
    if (v.denominator() != 1) throw std::invalid_argument("GF(p) phi values must be integers");
    ints.push_back(v.numerator());
  }
  return prime_field(alphabet, p, std::move(ints));
}

Rational PhiSpec::apply(const PiElement& x) const {
  if (field_ == FieldKind::Rationals) {
    Rational r(0);
    for (const auto& t : x.terms()) r += values_.at(t.orbit) * t.coeff;
    return r;
  }
  std::int64_t r = 0;
  for (const auto& t : x.terms()) {
    r = mod(r + mod(t.coeff, prime_) * values_.at(t.orbit).numerator(), prime_);
  }
  return Rational(r);
}

std::string PhiSpec::id(const InvolutiveAlphabet& alphabet) const {
  std::string out;
  for (std::size_t o = 0; o < values_.size(); ++o) {
    if (!out.empty()) out += ',';
    out += alphabet.name(alphabet.orbits()[o].representative) + "=";
    const Rational& v = values_[o];
    out += std::to_string(v.numerator());
    if (v.denominator() != 1) out += "/" + std::to_string(v.denominator());
  }
  if (field_ == FieldKind::PrimeField) out += ";p=" + std::to_string(prime_);
  return out;
}

std::vector<PhiSpec> sign_battery(const InvolutiveAlphabet& alphabet) {
  std::vector<int> free;
  for (std::size_t o = 0; o < alphabet.orbits().size(); ++o) {
    if (alphabet.orbits()[o].kind == OrbitKind::Free) free.push_back(static_cast<int>(o));
  }
  std::vector<PhiSpec> out;
  if (free.empty()) {
    out.push_back(PhiSpec::rational(alphabet, std::vector<Rational>(alphabet.orbits().size(), 0)));
    return out;
  }
  // The first free orbit is pinned to +1, which removes the global sign.
  const std::size_t count = std::size_t{1} << (free.size() - 1);
  for (std::size_t mask = 0; mask < count; ++mask) {
    std::vector<Rational> values(alphabet.orbits().size(), Rational(0));
    values[free[0]] = 1;
    for (std::size_t i = 1; i < free.size(); ++i) {
      values[free[i]] = (mask >> (i - 1)) & 1 ? -1 : 1;
    }
    out.push_back(PhiSpec::rational(alphabet, std::move(values)));
  }
  return out;
}

}  // namespace nanocob
