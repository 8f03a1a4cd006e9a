#ifndef RELATOR_KERNEL_HPP
#define RELATOR_KERNEL_HPP

#include <functional>

#include "relator/core.hpp"
#include "relator/cover.hpp"
#include "relator/weights.hpp"

namespace relator::kernel {

struct KernelOptions {
  int window = 3;
  // Designated extreme letter; default is the lexicographically smallest
  // letter occurring at both extremes.
  std::optional<std::string> designated_e;
};

struct Extremes {
  long long M = 0;
  long long m = 0;
  bool trivial_case = false;  // M - m == 1: G = <phi_letters> * H
  std::string e;
  std::string f;  // empty in the trivial case
  std::vector<std::string> phi_letters;
};

// Profile extremes of the skeleton under the constant weight 1.  Requires a
// strong presentation (unique reduced extremes with a shared letter).
Extremes extremes(const RelativePresentation& p, const KernelOptions& opts = {});

// One generator occurrence in the collapsed world: a level edge (i, x) with
// x != f, a level coefficient (i, h), or the stable letter s.
struct KItem {
  enum class Kind { Edge, Coeff, Stable };
  Kind kind = Kind::Edge;
  long long level = 0;  // Edge: bottom vertex; Coeff: vertex
  SignedLetter sl;      // Edge: letter and traversal sign; Stable: sign in exp
  int exp = 1;          // Stable sign
  Elem h;               // Coeff payload

  static KItem edge(long long i, SignedLetter s);
  static KItem coeff(long long i, Elem h);
  static KItem stable(int exp);
  bool operator==(const KItem& o) const;
};
using KWord = std::vector<KItem>;

KWord kword_inverse(const CoeffGroup& H, const KWord& w);
KWord kword_shift(const KWord& w, long long by);
std::string to_string(const KItem& g);
std::string to_string(const KWord& w);

struct KernelData {
  RelativePresentation source;  // alphabet-restricted input
  std::string e, f;
  long long M = 0;  // always 1 after normalization
  long long m = 0;
  int eps = 1;
  std::string a, b;   // corner letters
  Elem h, hprime;     // corner coefficients
  cover::LevelledPath gamma0, delta0;
  size_t rotation = 0;    // applied after the optional inversion
  bool inverted = false;
  RelativeRelator normalized;

  std::string stable;  // fresh stable-letter name, normally "s"
  std::vector<std::string> f0_letters;  // basis of F0, in order
  std::string window_name(long long i) const;  // (i, e) generator name
  // Level i if the name is window_name(i) for some i in (m, M), else nullopt.
  std::optional<long long> window_level(const std::string& name) const;

 private:
  mutable std::map<long long, std::string> name_cache_;
  mutable std::map<std::string, long long> level_cache_;
};

// Rotates / inverts R so its lift reads
//   (M-1,e)(M,h)(M-1,a)^{-1} gamma0 ((m,b)^{-1}(m,h')(m,e))^eps delta0
// and records the corner data.  Requires the non-trivial case.
KernelData decompose(const RelativePresentation& p, const KernelOptions& opts = {});

struct CollapsedRelator {
  long long n = 0;
  KWord items;  // (n+M-1,e) alpha (n+m,e)^eps beta
  KWord alpha, beta;
};

// Lifts the normalized relator at level n, deletes tree edges (i, f), and
// splits off the flanking e-free segments.
CollapsedRelator collapse(const KernelData& d, long long n);

struct HnnData {
  int window = 0;
  std::vector<CollapsedRelator> relators;  // |n| <= window
  std::vector<KWord> conjugation;          // s g s^-1 (shift g)^-1
};

HnnData hnn_presentation(const KernelData& d, int window);

// The isomorphism between the collapsed kernel and H * F0.  Images of
// out-of-window e-generators are resolved by the two inductive clauses with
// recursion depth capped at window + (M - m) (DepthError beyond it).
class KernelIso {
 public:
  KernelIso(const KernelData& d, int window);

  FreeProductElement forward(const KItem& g) const;
  FreeProductElement forward(const KWord& w) const;
  KWord backward(const SignedLetter& f0_letter) const;
  KWord backward_coeff(const Elem& h) const;

  const KernelData& data() const { return d_; }
  int window() const { return window_; }

 private:
  FreeProductElement e_image(long long n, int depth) const;
  FreeProductElement forward_at(const KItem& g, int depth) const;
  FreeProductElement forward_at(const KWord& w, int depth) const;

  KernelData d_;
  int window_;
  mutable std::map<long long, FreeProductElement> memo_;
  mutable std::map<long long, CollapsedRelator> collapsed_;
  const CollapsedRelator& relator_at(long long n) const;
};

struct VerifyIsoEntry {
  std::string check;  // "V1" | "V2" | "V3"
  long long n = 0;
  std::string subject;
  bool pass = false;
};

struct VerifyIsoReport {
  bool v1 = true, v2 = true, v3 = true;
  std::vector<VerifyIsoEntry> entries;
  bool pass() const { return v1 && v2 && v3; }
};

// V1: images of collapsed relators die; V2: images of windowed conjugation
// relators die; V3: forward(backward) is the identity on the basis.  tamper,
// if given, mutates each collapsed relator before the V1 check (negative
// controls).
VerifyIsoReport verify_iso(
    const KernelData& d, int window,
    const std::function<void(CollapsedRelator&)>& tamper = nullptr);

// An element of the cyclic extension: u in H * F0 plus the Z-coordinate.
struct GBarElement {
  FreeProductElement u;
  long long n = 0;
  bool operator==(const GBarElement& o) const { return u == o.u && n == o.n; }
  bool operator!=(const GBarElement& o) const { return !(*this == o); }
};

// Normal forms for the ambient group: the twisted product
// (u,p)(v,q) = (u mu^p(v), p+q) over H * F0.
class GBar {
 public:
  GBar(const KernelData& d, int window);

  GBarElement identity() const { return {}; }
  GBarElement mul(const GBarElement& a, const GBarElement& b) const;
  GBarElement inv(const GBarElement& a) const;
  FreeProductElement shift(const FreeProductElement& u, long long p) const;

  // Image of a word over the presentation's letters and H.
  GBarElement embed(const MixedWord& w) const;
  GBarElement embed(const Word& w) const { return embed(mixed_of(w)); }
  bool equal(const MixedWord& w1, const MixedWord& w2) const;
  // Preimage in the original generators; embed(retract(g)) == g whenever g
  // is an embed image.
  MixedWord retract(const GBarElement& g) const;

  const KernelIso& iso() const { return iso_; }

 private:
  FreeProductElement shift_step(const FreeProductElement& u, int dir) const;
  // Image of a single signed letter shifted to height n; extended one
  // shift_step at a time from the height-0 image and reused across words.
  const FreeProductElement& letter_at(const SignedLetter& sl,
                                      long long n) const;
  KernelIso iso_;
  mutable std::map<std::pair<std::string, long long>, FreeProductElement>
      letter_cache_;
};

}  // namespace relator::kernel

#endif  // RELATOR_KERNEL_HPP
