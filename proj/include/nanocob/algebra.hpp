#pragma once

#include <boost/rational.hpp>

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace nanocob {

using Rational = boost::rational<std::int64_t>;

enum class OrbitKind { Free, Fixed };

struct Orbit {
  int representative = 0;  // least member in declaration order
  OrbitKind kind = OrbitKind::Fixed;
  std::vector<int> members;  // representative first
  bool operator==(const Orbit&) const = default;
};

// A finite set of symbols with an involution tau. Symbols are addressed by
// their declaration index.
class InvolutiveAlphabet {
 public:
  InvolutiveAlphabet() = default;
  InvolutiveAlphabet(std::vector<std::string> symbols, std::vector<int> tau);

  // Builds tau from name pairs; (x, x) declares a fixed point. Every symbol
  // must be covered. A pair repeated in either order is tolerated unless
  // strict is set.
  static InvolutiveAlphabet from_pairs(
      std::vector<std::string> symbols,
      const std::vector<std::pair<std::string, std::string>>& pairs,
      bool strict = false);

  std::size_t size() const { return symbols_.size(); }
  const std::string& name(int symbol) const;
  int index_of(const std::string& name) const;  // throws on unknown
  bool contains(const std::string& name) const;
  int tau(int symbol) const;

  const std::vector<Orbit>& orbits() const { return orbits_; }
  int orbit_of(int symbol) const;
  bool is_fixed(int symbol) const;
  bool fixed_point_free() const;
  std::size_t free_orbit_count() const;
  // +1 for an orbit representative or fixed point, -1 for tau(representative).
  int sign(int symbol) const;

  const std::vector<std::string>& symbols() const { return symbols_; }
  const std::vector<int>& tau_table() const { return tau_; }

  bool operator==(const InvolutiveAlphabet& other) const {
    return symbols_ == other.symbols_ && tau_ == other.tau_;
  }

 private:
  std::vector<std::string> symbols_;
  std::vector<int> tau_;
  std::vector<Orbit> orbits_;
  std::vector<int> orbit_of_;
};

using AlphabetPtr = std::shared_ptr<const InvolutiveAlphabet>;

AlphabetPtr make_alphabet(InvolutiveAlphabet alphabet);
std::vector<Orbit> orbit_decomposition(const InvolutiveAlphabet& alphabet);

// Element of pi = Z^{free orbits} + (Z/2)^{fixed orbits}, stored sparsely and
// sorted by orbit. Torsion terms carry coefficient 1.
class PiElement {
 public:
  struct Term {
    int orbit = 0;
    std::int64_t coeff = 0;
    bool torsion = false;
    auto operator<=>(const Term&) const = default;
  };

  PiElement() = default;
  static PiElement generator(int orbit, std::int64_t coeff, bool torsion);

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::int64_t coefficient(int orbit) const;
  // Sum of |coefficients| over free orbits.
  std::int64_t free_degree() const;
  bool has_torsion() const;
  bool is_self_negative() const { return *this == -*this; }

  PiElement operator-() const;
  PiElement& operator+=(const PiElement& other);
  PiElement& operator-=(const PiElement& other);
  friend PiElement operator+(PiElement a, const PiElement& b) { return a += b; }
  friend PiElement operator-(PiElement a, const PiElement& b) { return a -= b; }
  friend PiElement operator*(std::int64_t k, const PiElement& x);

  auto operator<=>(const PiElement&) const = default;
  bool operator==(const PiElement&) const = default;

 private:
  std::vector<Term> terms_;
};

PiElement pi_of_letter(const InvolutiveAlphabet& alphabet, int symbol);
inline PiElement pi_add(const PiElement& x, const PiElement& y) { return x + y; }
inline PiElement pi_negate(const PiElement& x) { return -x; }

// Pretty form: integer combination of orbit representatives, e.g. "a+2b-c",
// with torsion terms suffixed "(2)". Zero prints as "0".
std::string format_pi(const InvolutiveAlphabet& alphabet, const PiElement& x);

// Element of the free product of cyclic groups generated by z_a with
// z_a z_{tau(a)} = 1. Free orbits give Z, fixed points give Z/2.
class PiWord {
 public:
  struct Syllable {
    int orbit = 0;
    std::int64_t exponent = 0;
    auto operator<=>(const Syllable&) const = default;
  };

  PiWord() = default;
  explicit PiWord(AlphabetPtr alphabet) : alphabet_(std::move(alphabet)) {}
  static PiWord generator(AlphabetPtr alphabet, int symbol, std::int64_t exponent = 1);
  static PiWord from_syllables(AlphabetPtr alphabet, const std::vector<Syllable>& syllables);

  const std::vector<Syllable>& syllables() const { return syllables_; }
  const AlphabetPtr& alphabet() const { return alphabet_; }
  bool is_identity() const { return syllables_.empty(); }
  // Number of generator letters in the reduced form.
  std::int64_t letter_length() const;

  PiWord inverse() const;
  friend PiWord operator*(const PiWord& u, const PiWord& v);

  bool operator==(const PiWord& other) const;

 private:
  void push(Syllable s);  // multiply on the right by one syllable, reducing
  AlphabetPtr alphabet_;
  std::vector<Syllable> syllables_;
};

inline PiWord pi_word_multiply(const PiWord& u, const PiWord& v) { return u * v; }
PiWord cyclic_reduction(const PiWord& u);
// Canonical representative of the conjugacy class: cyclic reduction rotated
// to its lexicographically least syllable rotation.
PiWord conjugacy_normal_form(const PiWord& u);
bool pi_word_is_conjugate(const PiWord& u, const PiWord& v);
PiElement abelianize(const PiWord& u);
std::string format_pi_word(const PiWord& u);

enum class FieldKind { Rationals, PrimeField };

// Additive map from pi to Q or GF(p), given by its value on each orbit
// representative. Values on fixed orbits must have order dividing 2.
class PhiSpec {
 public:
  PhiSpec() = default;
  static PhiSpec rational(const InvolutiveAlphabet& alphabet, std::vector<Rational> orbit_values);
  static PhiSpec prime_field(const InvolutiveAlphabet& alphabet, std::int64_t p,
                             std::vector<std::int64_t> orbit_values);
  // Parses "a=1,b=-1" or "a=1,c=1;p=2". Unlisted orbits map to 0. A value
  // given on tau(rep) is negated onto rep.
  static PhiSpec parse(const InvolutiveAlphabet& alphabet, const std::string& text);

  FieldKind field() const { return field_; }
  std::int64_t prime() const { return prime_; }
  const std::vector<Rational>& values() const { return values_; }

  // For GF(p) the result is the residue in [0, p) with denominator 1.
  Rational apply(const PiElement& x) const;
  std::string id(const InvolutiveAlphabet& alphabet) const;

  bool operator==(const PhiSpec&) const = default;

 private:
  FieldKind field_ = FieldKind::Rationals;
  std::int64_t prime_ = 0;
  std::vector<Rational> values_;  // indexed by orbit
};

inline Rational phi_apply(const PhiSpec& phi, const PiElement& x) { return phi.apply(x); }

// All +-1 assignments on free-orbit representatives (fixed orbits -> 0),
// one per pair {phi, -phi}. With no free orbits, the single zero map.
std::vector<PhiSpec> sign_battery(const InvolutiveAlphabet& alphabet);

}  // namespace nanocob
