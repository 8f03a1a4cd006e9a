#ifndef RELATOR_QUOTIENTS_HPP
#define RELATOR_QUOTIENTS_HPP

#include <functional>

#include "relator/core.hpp"
#include "relator/embed.hpp"

namespace relator::quotients {

// A permutation on {0..d-1}; target groups are symmetric groups, which hold
// a copy of every group of order <= d via the regular action.
using Perm = std::vector<int>;

Perm perm_identity(int d);
Perm perm_mul(const Perm& a, const Perm& b);  // (a*b)(i) = a(b(i))
Perm perm_inverse(const Perm& a);
std::string perm_cycles(const Perm& a);  // "()" for the identity

// A homomorphism from the coefficient group into S_d, given elementwise.
struct CoeffHom {
  std::string name;
  int degree = 0;
  std::function<Perm(const Elem&)> map;
};

// Always the trivial hom; for finite H of order <= d also the regular
// representation.  Infinite H with no supplied catalog is an error at
// enumeration time.
std::vector<CoeffHom> default_catalog(const CoeffGroup& H, int degree);

struct HomSearchOptions {
  long long node_budget = 2000000;
  std::vector<CoeffHom> catalog;  // empty: default_catalog per degree
};

struct FiniteQuotientWitness {
  int degree = 0;
  std::map<std::string, Perm> letter_images;
  std::string coeff_hom_name;
  std::function<Perm(const Elem&)> coeff_map;
  std::vector<std::string> check_log;
};

Perm witness_image(const FiniteQuotientWitness& w, const CoeffGroup& H,
                   const MixedWord& word);

// Relator images must die; a separating witness must also move the query.
bool reverify_witness(const RelativePresentation& p,
                      const FiniteQuotientWitness& w,
                      const MixedWord* query = nullptr);

struct EnumerationStats {
  long long nodes = 0;
  bool budget_exhausted = false;  // partial results, never silent
};

// All letter-to-permutation assignments of degree exactly `degree` combined
// with each catalog coefficient hom, deterministic order, relators pruned as
// soon as fully assigned.  visit returns false to stop early.
EnumerationStats enumerate_homs(
    const RelativePresentation& p, int degree, const HomSearchOptions& opts,
    const std::function<bool(const FiniteQuotientWitness&)>& visit);

struct SeparateResult {
  bool found = false;
  bool query_trivial = false;  // pre-check: query dies in every quotient trail
  bool partial = false;        // some degree ran out of budget
  FiniteQuotientWitness witness;
  long long nodes = 0;
};

// First witness with a nonidentity query image, degrees 1..degree_bound in
// order (cumulative, hence monotone in the bound).  If `oracle` is supplied
// and declares the query trivial the search is skipped.
SeparateResult separate(
    const RelativePresentation& p, const MixedWord& query, int degree_bound,
    const HomSearchOptions& opts = {},
    const std::function<bool(const MixedWord&, const MixedWord&)>& oracle =
        nullptr);

struct TransferResult {
  FreeProductElement conjugator;  // rho(b), in the small group
  bool pass = false;
};

// Pushes a conjugacy relation b c^i b^-1 = d^j down a retraction: checks
// rho(b) c^i rho(b)^-1 = d^j with the supplied small-group equality oracle.
TransferResult transfer_conjugacy(
    const embed::RetractionPair& pair, const MixedWord& b, const MixedWord& c,
    const MixedWord& d, long long i, long long j,
    const std::function<bool(const MixedWord&, const MixedWord&)>& oracle);

}  // namespace relator::quotients

#endif  // RELATOR_QUOTIENTS_HPP
