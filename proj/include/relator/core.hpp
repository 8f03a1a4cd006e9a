#ifndef RELATOR_CORE_HPP
#define RELATOR_CORE_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace relator {

// ---------------------------------------------------------------------------
// Errors

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class DepthError : public Error {
 public:
  DepthError(const std::string& what, long long level)
      : Error(what), level(level) {}
  long long level;
};

// ---------------------------------------------------------------------------
// Letters and words

// A letter is identified by its (nonempty) token name.  Alphabets are finite
// ordered sets of letters; the declaration order drives every deterministic
// iteration in the library.
struct SignedLetter {
  std::string letter;
  int exp = 1;  // +1 or -1

  SignedLetter() = default;
  SignedLetter(std::string l, int e) : letter(std::move(l)), exp(e) {}
  SignedLetter inverse() const { return {letter, -exp}; }
  bool operator==(const SignedLetter& o) const {
    return letter == o.letter && exp == o.exp;
  }
  bool operator!=(const SignedLetter& o) const { return !(*this == o); }
};

// A word on an alphabet.  Not required to be reduced.
struct Word {
  std::vector<SignedLetter> syllables;

  Word() = default;
  explicit Word(std::vector<SignedLetter> s) : syllables(std::move(s)) {}
  size_t size() const { return syllables.size(); }
  bool empty() const { return syllables.empty(); }
  Word inverse() const;
  bool operator==(const Word& o) const { return syllables == o.syllables; }
  bool operator!=(const Word& o) const { return !(*this == o); }
};

std::string to_string(const Word& w);
Word parse_word(const std::string& text);

// The unique reduced word freely equal to the input.
Word free_reduce(const Word& w);
bool is_cyclically_reduced(const Word& w);

// ---------------------------------------------------------------------------
// Coefficient groups
//
// Elements are canonical strings: two elements are equal iff their strings
// are equal.  Realizations: trivial, Z, Z(n), finite-by-table, free(k), and
// free products of realizations.

class CoeffGroup {
 public:
  using Elem = std::string;

  virtual ~CoeffGroup() = default;

  virtual Elem identity() const = 0;
  virtual Elem multiply(const Elem& a, const Elem& b) const = 0;
  virtual Elem inverse(const Elem& a) const = 0;
  virtual bool contains(const Elem& a) const = 0;

  // Full enumeration for finite realizations, nullopt otherwise.
  virtual std::optional<std::vector<Elem>> elements() const = 0;
  // A finite generating set (all elements for table groups).
  virtual std::vector<Elem> generators() const = 0;

  virtual Elem parse(const std::string& literal) const = 0;
  virtual std::string describe() const = 0;

  bool is_identity(const Elem& a) const { return a == identity(); }
  Elem pow(const Elem& a, long long n) const;
};

using CoeffGroupPtr = std::shared_ptr<const CoeffGroup>;
using Elem = CoeffGroup::Elem;

CoeffGroupPtr make_trivial_group();
CoeffGroupPtr make_cyclic_group(long long order);  // order >= 1
CoeffGroupPtr make_infinite_cyclic_group();
// rows[i][j] = index of element i * element j; validates the group axioms
// (identity/inverses exact, associativity checked on all triples for small
// orders, spot-checked above that).
CoeffGroupPtr make_table_group(const std::vector<std::vector<int>>& rows);
CoeffGroupPtr make_free_group(int rank);
CoeffGroupPtr make_free_product(std::vector<CoeffGroupPtr> components);

// ---------------------------------------------------------------------------
// Relative relators and presentations

// One term x^e h of a relative relator.  The coefficient slot is always
// present; identity coefficients are elided only inside normal forms.
struct RelatorTerm {
  SignedLetter sl;
  Elem h;
  bool operator==(const RelatorTerm& o) const {
    return sl == o.sl && h == o.h;
  }
};

struct RelativeRelator {
  std::vector<RelatorTerm> terms;  // length r >= 1

  size_t size() const { return terms.size(); }
  bool operator==(const RelativeRelator& o) const { return terms == o.terms; }
};

struct RelativePresentation {
  std::vector<std::string> alphabet;  // ordered, unique
  CoeffGroupPtr group;
  std::vector<RelativeRelator> relators;  // nonempty

  void validate() const;  // throws Error on invariant violation
  bool has_letter(const std::string& name) const;
};

// The x-skeleton: drop all coefficient terms.
Word skeleton(const RelativeRelator& r);

RelativeRelator relator_inverse(const CoeffGroup& H, const RelativeRelator& r);
RelativeRelator relator_rotate(const RelativeRelator& r, size_t t);
RelativeRelator power(const CoeffGroup& H, const RelativeRelator& r, long long n);

// Relator substitution: replace every z^{+-1} in S by R^{+-1}, carrying
// coefficient terms along.  S is over y u {z}, R over x; x and y disjoint.
RelativeRelator substitute(const CoeffGroup& H, const RelativeRelator& S,
                           const std::string& z, const RelativeRelator& R);

struct RestrictResult {
  RelativePresentation restricted;
  int free_rank;  // |x| - |x'|
  std::vector<std::string> dropped;
};
RestrictResult restrict_alphabet(const RelativePresentation& p);

// ---------------------------------------------------------------------------
// Mixed words and free-product normal forms

// An element of x^{+-1} u H, the raw material of H*F computations.
struct MixedItem {
  bool is_letter = true;
  SignedLetter sl;
  Elem h;

  static MixedItem of_letter(SignedLetter s) {
    MixedItem m;
    m.is_letter = true;
    m.sl = std::move(s);
    return m;
  }
  static MixedItem of_coeff(Elem e) {
    MixedItem m;
    m.is_letter = false;
    m.h = std::move(e);
    return m;
  }
  bool operator==(const MixedItem& o) const {
    return is_letter == o.is_letter && sl == o.sl && h == o.h;
  }
};
using MixedWord = std::vector<MixedItem>;

MixedWord mixed_of(const RelativeRelator& r);
MixedWord mixed_of(const Word& w);
MixedWord mixed_inverse(const CoeffGroup& H, const MixedWord& w);

// A normal form in H*F: strictly alternating nontrivial coefficient
// syllables and nonempty reduced free syllables.  Empty = identity.
struct FPSyllable {
  bool is_coeff = false;
  Elem h;
  Word w;
  bool operator==(const FPSyllable& o) const {
    return is_coeff == o.is_coeff && h == o.h && w == o.w;
  }
};

struct FreeProductElement {
  std::vector<FPSyllable> syllables;

  bool is_identity() const { return syllables.empty(); }
  bool operator==(const FreeProductElement& o) const {
    return syllables == o.syllables;
  }
  bool operator!=(const FreeProductElement& o) const { return !(*this == o); }
};

FreeProductElement fp_normalize(const CoeffGroup& H, const MixedWord& raw);
// In-place acc := acc * b with seam cancellation only; linear in |b| plus
// whatever cancels, unlike fp_mul which rebuilds both operands.
void fp_append(const CoeffGroup& H, FreeProductElement& acc,
               const FreeProductElement& b);
FreeProductElement fp_mul(const CoeffGroup& H, const FreeProductElement& a,
                          const FreeProductElement& b);
FreeProductElement fp_inverse(const CoeffGroup& H, const FreeProductElement& a);
MixedWord fp_to_mixed(const FreeProductElement& a);
std::string fp_to_string(const FreeProductElement& a);

FreeProductElement fp_of_letter(const SignedLetter& s);
FreeProductElement fp_of_coeff(const CoeffGroup& H, const Elem& h);

// A shortest element in the conjugacy class of a, found by rotating the
// seam into the interior until no rotation shortens the normal form.
FreeProductElement fp_cyclic_reduce(const CoeffGroup& H,
                                    const FreeProductElement& a);

// Reduced relative form of a mixed word: one term per letter with the
// following coefficient attached; a leading coefficient folds cyclically
// into the last term.  Throws if no letter survives normalization.
RelativeRelator relator_of_mixed(const CoeffGroup& H, const MixedWord& w);
// Conjugacy-normalized relator: fp_cyclic_reduce applied to the relator's
// element, re-read as a relator.  The normal closure is unchanged.
RelativeRelator relator_cyclic_reduce(const CoeffGroup& H,
                                      const RelativeRelator& r);

// ---------------------------------------------------------------------------
// Homomorphism data

// Letter images live in H'*F(target letters); the coefficient action is
// either the identity on H or a supplied elementwise map into the target
// group.
struct HomomorphismData {
  std::shared_ptr<const RelativePresentation> source;
  std::shared_ptr<const RelativePresentation> target;  // may be null (carrier)
  std::vector<std::string> target_letters;
  CoeffGroupPtr target_group;
  std::map<std::string, FreeProductElement> images;
  std::function<Elem(const Elem&)> coeff_map;  // null => identity on H
  bool verified = false;

  Elem map_coeff(const Elem& h) const { return coeff_map ? coeff_map(h) : h; }
};

HomomorphismData identity_hom(std::shared_ptr<const RelativePresentation> p);

FreeProductElement apply_hom(const HomomorphismData& hom, const MixedWord& w);
FreeProductElement apply_hom(const HomomorphismData& hom, const Word& w);
FreeProductElement apply_hom(const HomomorphismData& hom,
                             const FreeProductElement& e);

// Composition: (second . first); first's target must be second's source.
HomomorphismData compose_hom(const HomomorphismData& second,
                             const HomomorphismData& first);

enum class RelatorImageKind {
  Identity,
  TargetRelator,
  TargetRelatorInverse,
  CyclicPermutation,
  Conjugate,  // cyclically reduces to a rotation of a target relator
  Other,
};

struct HomCheckEntry {
  size_t relator_index;
  RelatorImageKind kind;
  bool pass;
};

struct HomReport {
  bool pass = true;
  std::vector<HomCheckEntry> entries;
};

// Passes iff every source relator maps to the identity or to a target
// relator up to inversion and cyclic permutation; sets hom.verified.
HomReport verify_hom(HomomorphismData& hom);

}  // namespace relator

#endif  // RELATOR_CORE_HPP
