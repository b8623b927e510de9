#pragma once

#include "nanocob/algebra.hpp"
#include "nanocob/linalg.hpp"
#include "nanocob/moves.hpp"
#include "nanocob/words.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace nanocob {

// A set S = {s} + S° with S° projected to the ground alphabet and a form
// e: S x S -> pi. Basis index 0 is s; core letter A has index A + 1.
class AlphaPairing {
 public:
  AlphaPairing() = default;
  AlphaPairing(AlphabetPtr ground, std::vector<int> projection, std::vector<PiElement> matrix,
               std::vector<std::string> names = {});
  static AlphaPairing trivial(AlphabetPtr ground);
  // S = {s} with e(s,s) = r.
  static AlphaPairing point(AlphabetPtr ground, PiElement r);

  const InvolutiveAlphabet& ground() const { return *ground_; }
  const AlphabetPtr& ground_ptr() const { return ground_; }
  std::size_t core_size() const { return projection_.size(); }
  std::size_t dim() const { return projection_.size() + 1; }
  const std::vector<int>& projection() const { return projection_; }
  int projection(int letter) const { return projection_.at(letter); }
  const std::vector<std::string>& names() const { return names_; }

  const PiElement& e(std::size_t i, std::size_t j) const { return matrix_[i * dim() + j]; }
  PiElement& at(std::size_t i, std::size_t j) { return matrix_[i * dim() + j]; }

  bool is_skew_symmetric() const;
  bool is_normal() const { return e(0, 0).is_zero(); }

  bool operator==(const AlphaPairing& other) const {
    return projection_ == other.projection_ && matrix_ == other.matrix_;
  }

 private:
  AlphabetPtr ground_;
  std::vector<int> projection_;
  std::vector<PiElement> matrix_;
  std::vector<std::string> names_;
};

AlphaPairing pairing_of_nanoword(const Nanoword& w);
// Independent computation through interleaving counts of the gaps.
AlphaPairing pairing_of_nanoword_alt(const Nanoword& w);
AlphaPairing opposite_pairing(const AlphaPairing& p);
AlphaPairing sum_pairings(const AlphaPairing& p1, const AlphaPairing& p2);
PiElement r_of(const AlphaPairing& p);
// Letter bijection q_letter = f[p_letter] preserving projections and e.
std::optional<std::vector<int>> pairing_isomorphism(const AlphaPairing& p, const AlphaPairing& q);
std::string format_pairing(const AlphaPairing& p);

// Integer combination over basis indices, sorted by index.
struct SVector {
  std::vector<std::pair<int, std::int64_t>> terms;
  static SVector basis(int index) { return SVector{{{index, 1}}}; }
  bool operator==(const SVector&) const = default;
};
using Filling = std::vector<SVector>;

PiElement bilinear(const AlphaPairing& p, const SVector& x, const SVector& y);
bool is_short(const AlphaPairing& p, const SVector& x);
bool is_filling(const AlphaPairing& p, const Filling& f);
bool is_annihilating(const AlphaPairing& p, const Filling& f);
std::string format_filling(const AlphaPairing& p, const Filling& f);

// Visits every filling; the callback returns false to stop early.
void for_each_filling(const AlphaPairing& p, const std::function<bool(const Filling&)>& visit);
std::vector<Filling> enumerate_fillings(const AlphaPairing& p);
std::optional<Filling> is_hyperbolic(const AlphaPairing& p);
bool are_cobordant(const AlphaPairing& p1, const AlphaPairing& p2);

// Builds the filling of p(w) + p(x')^- attached to a surgery along f and
// checks the vanishing conditions on p(w) and the annihilation of the whole
// filling. why receives the first failed condition.
bool verify_surgery_filling(const Nanoword& w, const Factor& f, std::string* why = nullptr);

// Per-orbit element of I/J (free orbits) or I/(J+2I) (fixed orbits): maps a
// canonical monomial to its coefficient. Coefficients of self-negative
// monomials and of fixed orbits are kept mod 2.
struct UPoly {
  std::vector<std::map<PiElement, std::int64_t>> orbits;
  std::vector<bool> fixed;

  bool is_zero() const;
  UPoly operator-() const;
  UPoly operator+(const UPoly& other) const;
  bool operator==(const UPoly&) const = default;
};

UPoly u_polynomial(const AlphaPairing& p);
UPoly u_polynomial_of_nanoword(const Nanoword& w);
// Requires a fixed-point-free ground alphabet; deg(0) = 0.
std::int64_t u_degree(const UPoly& u, const InvolutiveAlphabet& ground, int symbol);
std::string format_upoly(const UPoly& u, const InvolutiveAlphabet& ground);

// sigma_phi stored as 2*sigma. upper_bound marks results of capped searches.
struct Genus {
  int twice_value = 0;
  bool upper_bound = false;
  bool operator==(const Genus&) const = default;
};

// phi o e as an integer matrix: values scaled by a common denominator over Q,
// residues over GF(p). Rank is unaffected by the scaling.
IntMatrix phi_matrix(const AlphaPairing& p, const PhiSpec& phi);
std::size_t gram_rank(const IntMatrix& phi_e, const PhiSpec& phi, const Filling& f);

Genus genus_of_filling(const AlphaPairing& p, const PhiSpec& phi, const Filling& f);
Genus genus(const AlphaPairing& p, const PhiSpec& phi);
// One filling pass for several maps at once.
std::vector<Genus> genera(const AlphaPairing& p, const std::vector<PhiSpec>& phis);

// Tuples of pairings: basis s_1..s_r followed by the core letters of each
// pairing in order. Weak fillings carry s-coefficients in [-s_bound, s_bound]
// on s_1..s_{r-1}; the coefficient of s_r is normalized to 0, which does not
// change the span because s_1+...+s_r is always one of the vectors.
struct TupleForm {
  AlphaPairing form;             // basis index t < r is s_{t+1}; then letters
  std::size_t distinguished = 0;  // r
};

// Weak fillings with nonzero s-coefficients examined per tuple_genera call.
// Fillings of the direct sum are always examined in full first, so the
// result never exceeds the genus of the sum.
inline constexpr std::size_t kWeakFillingBudget = 20000;

TupleForm tuple_form(const std::vector<AlphaPairing>& tuple);
PiElement bilinear(const TupleForm& t, const SVector& x, const SVector& y);
void for_each_weak_filling(const std::vector<AlphaPairing>& tuple, int s_bound,
                           const std::function<bool(const Filling&)>& visit);
std::optional<Filling> is_hyperbolic_tuple(const std::vector<AlphaPairing>& tuple, int s_bound);
bool weakly_cobordant(const AlphaPairing& p, const AlphaPairing& q, int s_bound);
Genus tuple_genus(const std::vector<AlphaPairing>& tuple, const PhiSpec& phi, int s_bound);
std::vector<Genus> tuple_genera(const std::vector<AlphaPairing>& tuple,
                                const std::vector<PhiSpec>& phis, int s_bound);

// Replaces letter A by A' with |A'| = tau|A| and e(A',B) = m e(s,B) - e(A,B).
AlphaPairing m_shift(const AlphaPairing& p, int letter, std::int64_t m);

// Subgroup H_a of pi for each orbit, given by generators.
struct CoveringSpec {
  std::vector<std::vector<PiElement>> generators;  // indexed by orbit
};
bool in_subgroup(const InvolutiveAlphabet& ground, const std::vector<PiElement>& gens, const PiElement& x);
Nanoword covering(const Nanoword& w, const CoveringSpec& h);

}  // namespace nanocob
